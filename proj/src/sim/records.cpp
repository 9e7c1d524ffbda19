#include "polarbd/sim/records.hpp"

#include <algorithm>
#include <cmath>

namespace polarbd {

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
    if (sorted_.empty()) throw std::invalid_argument("empirical cdf needs samples");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
    auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::quantile(double q) const {
    if (q <= 0.0 || q > 1.0) throw std::invalid_argument("quantile level must lie in (0,1]");
    const auto n = static_cast<double>(sorted_.size());
    std::size_t idx = static_cast<std::size_t>(std::ceil(q * n));
    if (idx == 0) idx = 1;
    if (idx > sorted_.size()) idx = sorted_.size();
    return sorted_[idx - 1];
}

double ks_distance(const EmpiricalCdf& a, const EmpiricalCdf& b) {
    double d = 0.0;
    for (double x : a.sorted_samples()) d = std::max(d, std::abs(a(x) - b(x)));
    for (double x : b.sorted_samples()) d = std::max(d, std::abs(a(x) - b(x)));
    return d;
}

}  // namespace polarbd
