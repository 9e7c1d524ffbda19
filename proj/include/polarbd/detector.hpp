#pragma once

#include "polarbd/decoders.hpp"

namespace polarbd {

enum class Hypothesis { H0, H1 };

struct EarlyStopConfig {
    double accept_at = 0.0;
    double min_fraction_traversed = 0.0;
};

struct DetectorConfig {
    double threshold_d = 0.0;
    std::optional<int> spc_max_size;   // SPC leaves larger than this do not update D
    double spc_update_fraction = 1.0;  // leading fraction of SPC leaves that update D
    double spc_scale = 1.0;
    std::optional<EarlyStopConfig> early_stop;  // accept-only early termination
};

void to_json(nlohmann::json& j, const DetectorConfig& c);
void from_json(const nlohmann::json& j, DetectorConfig& c);

struct MetricTraceRow {
    int leaf_index = 0;  // ordinal in traversal order
    NodeKind kind = NodeKind::Branch;
    int nv = 0;
    double delta_d = 0.0;
    double cumulative_d = 0.0;
};

struct DetectionResult {
    double metric_d = 0.0;
    Hypothesis hypothesis = Hypothesis::H0;
    double traversed_fraction = 1.0;  // < 1 only after an early accept
    std::optional<BitVec> codeword;   // absent when traversal stopped early
    std::optional<BitVec> u_est;
};

// Mean of alpha added to d.
double metric_update_rate0(double d, const double* alpha, int nv);
// Magnitude of the mean replica LLR added to d.
double metric_update_rep(double d, const double* alpha, int nv);
// Signed minimum magnitude: spc_scale * (-1)^parity * min|alpha|, no 1/nv
// normalization; skipped entirely when nv exceeds config.spc_max_size.
double metric_update_spc(double d, const double* alpha, int nv, const DetectorConfig& config);

inline double metric_update_rate0(double d, const LlrVec& a) {
    return metric_update_rate0(d, a.data(), static_cast<int>(a.size()));
}
inline double metric_update_rep(double d, const LlrVec& a) {
    return metric_update_rep(d, a.data(), static_cast<int>(a.size()));
}
inline double metric_update_spc(double d, const LlrVec& a, const DetectorConfig& config) {
    return metric_update_spc(d, a.data(), static_cast<int>(a.size()), config);
}

// Blind detection over one fast-SSC traversal: the metric consumes exactly the
// leaf LLRs the decoder sees, so detect() costs one decode.
class Detector {
  public:
    Detector(const CodeSpec& spec, DetectorConfig config, const TreeConfig& tree_config = {});
    Detector(std::shared_ptr<const DecoderTree> tree, DetectorConfig config);

    DetectionResult detect(const LlrVec& llr, std::vector<MetricTraceRow>* trace = nullptr);

    const DetectorConfig& config() const { return config_; }
    DetectorConfig& config() { return config_; }
    const DecoderTree& tree() const { return decoder_.tree(); }

  private:
    FastSscDecoder decoder_;
    DetectorConfig config_;
    int spc_budget_ = 0;  // number of leading SPC leaves that update D
};

DetectionResult detect(const LlrVec& llr, const CodeSpec& spec, const DetectorConfig& config,
                       const TreeConfig& tree_config = {});

}  // namespace polarbd
