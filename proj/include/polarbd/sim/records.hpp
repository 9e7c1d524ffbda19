#pragma once

#include <cstdint>
#include <vector>

#include "polarbd/channel.hpp"
#include "polarbd/detector.hpp"

namespace polarbd {

struct TrialRecord {
    std::uint64_t trial_index = 0;
    Scenario scenario = Scenario::NoTx;
    double ebn0_db = 0.0;
    double metric_d = 0.0;
    Hypothesis hypothesis = Hypothesis::H0;
    bool decodable = false;  // subsequent decoder recovered the frame (RegTx only)
};

class EmpiricalCdf {
  public:
    explicit EmpiricalCdf(std::vector<double> samples);  // sorts, must be non-empty

    // F(x) = fraction of samples <= x
    double operator()(double x) const;
    // smallest sample s with F(s) >= q, for q in (0,1]
    double quantile(double q) const;
    double median() const { return quantile(0.5); }

    std::size_t size() const { return sorted_.size(); }
    double min() const { return sorted_.front(); }
    double max() const { return sorted_.back(); }
    const std::vector<double>& sorted_samples() const { return sorted_; }

  private:
    std::vector<double> sorted_;
};

// Two-sample Kolmogorov-Smirnov distance, evaluated exactly at all jump points.
double ks_distance(const EmpiricalCdf& a, const EmpiricalCdf& b);

struct RocPoint {
    double threshold_d = 0.0;
    double p_miss = 0.0;
    double p_fa = 0.0;
    std::uint64_t n_miss = 0;
    std::uint64_t n_fa = 0;
    std::uint64_t n_f1 = 0;
    std::uint64_t n_f0 = 0;
};

struct FerPoint {
    double ebn0_db = 0.0;
    double fer = 0.0;
    double ber = 0.0;
    std::uint64_t frames = 0;
    std::uint64_t frame_errors = 0;
    std::uint64_t bit_errors = 0;
};

}  // namespace polarbd
