#include "polarbd/code_spec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "polarbd/channel.hpp"

namespace polarbd {

std::vector<std::uint8_t> CodeSpec::frozen_mask() const {
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(block_len_n), 0u);
    for (int i : frozen_set) mask[static_cast<std::size_t>(i)] = 1u;
    return mask;
}

std::vector<int> CodeSpec::info_positions() const {
    auto mask = frozen_mask();
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(info_len_k));
    for (int i = 0; i < block_len_n; ++i)
        if (!mask[static_cast<std::size_t>(i)]) out.push_back(i);
    return out;
}

int CodeSpec::payload_len() const { return crc ? info_len_k - crc->width : info_len_k; }

void validate(const CodeSpec& spec) {
    if (!is_power_of_two(spec.block_len_n) || spec.block_len_n < 2)
        throw std::invalid_argument("block length must be a power of two >= 2");
    if (spec.info_len_k < 0 || spec.info_len_k > spec.block_len_n)
        throw std::invalid_argument("info length out of range");
    if (static_cast<int>(spec.frozen_set.size()) != spec.block_len_n - spec.info_len_k)
        throw std::invalid_argument("frozen set cardinality must equal N - K");
    if (!std::is_sorted(spec.frozen_set.begin(), spec.frozen_set.end()))
        throw std::invalid_argument("frozen set must be sorted ascending");
    if (std::adjacent_find(spec.frozen_set.begin(), spec.frozen_set.end()) != spec.frozen_set.end())
        throw std::invalid_argument("frozen set has duplicates");
    for (int i : spec.frozen_set)
        if (i < 0 || i >= spec.block_len_n) throw std::invalid_argument("frozen index out of range");
    if (spec.crc && spec.crc->width >= spec.info_len_k)
        throw std::invalid_argument("crc width must leave room for payload bits");
}

namespace {

// Two-piece closed-form approximation of the check-node mean transfer, with
// its exact inverse on each piece. Constants follow the standard published
// implementation of Gaussian-approximation construction.
constexpr double kAlpha = -0.4527;
constexpr double kBeta = 0.0218;
constexpr double kGamma = 0.86;
constexpr double kPhiPivot = 0.867861;
constexpr double kPhiInvPivot = 0.6845772418;

double phi(double x) {
    if (x < kPhiPivot) return std::exp(0.0564 * x * x - 0.48560 * x);
    return std::exp(kAlpha * std::pow(x, kGamma) + kBeta);
}

double phi_inv(double t) {
    if (t > kPhiInvPivot)
        return 4.304964539 * (1.0 - std::sqrt(1.0 + 0.9567131408 * std::log(t)));
    const double a = 1.0 / kAlpha, b = -kBeta / kAlpha, c = 1.0 / kGamma;
    return std::pow(a * std::log(t) + b, c);
}

// Mean of the degraded (check-side) child given parent mean t.
double check_mean(double t) {
    const double u = 1.0 - (1.0 - phi(t)) * (1.0 - phi(t));
    if (u <= 0.0) return t + std::log(2.0) / (kAlpha * kGamma);
    double z = phi_inv(u);
    if (std::isinf(z)) z = t + std::log(2.0) / (kAlpha * kGamma);
    return z;
}

// Mean LLR of every synthetic channel in natural u-index order.
std::vector<double> ga_mean_llrs(int n, double initial_mean) {
    const int stages = log2_exact(n);
    std::vector<double> z(static_cast<std::size_t>(n), initial_mean);
    for (int level = 1; level <= stages; ++level) {
        const int o1 = 1 << (stages - level + 1);
        const int o2 = 1 << (stages - level);
        for (int t = 0; t < (1 << (level - 1)); ++t) {
            const double m = z[static_cast<std::size_t>(t * o1)];
            z[static_cast<std::size_t>(t * o1)] = check_mean(m);
            z[static_cast<std::size_t>(t * o1 + o2)] = 2.0 * m;
        }
    }
    return z;
}

}  // namespace

std::vector<int> construct_frozen_set(int block_len_n, int info_len_k, double design_snr_db) {
    if (!is_power_of_two(block_len_n) || block_len_n < 2)
        throw std::invalid_argument("block length must be a power of two >= 2");
    if (info_len_k <= 0 || info_len_k > block_len_n)
        throw std::invalid_argument("info length must satisfy 0 < K <= N");
    const double rate = static_cast<double>(info_len_k) / block_len_n;
    const double sigma = ebn0_to_sigma(design_snr_db, rate);
    auto z = ga_mean_llrs(block_len_n, 2.0 / (sigma * sigma));

    std::vector<int> order(static_cast<std::size_t>(block_len_n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        double za = z[static_cast<std::size_t>(a)], zb = z[static_cast<std::size_t>(b)];
        return za != zb ? za < zb : a < b;
    });
    std::vector<int> frozen(order.begin(), order.begin() + (block_len_n - info_len_k));
    std::sort(frozen.begin(), frozen.end());
    return frozen;
}

CodeSpec make_code_spec(int block_len_n, int info_len_k, double design_snr_db,
                        std::optional<CrcSpec> crc, bool systematic) {
    CodeSpec spec;
    spec.block_len_n = block_len_n;
    spec.info_len_k = info_len_k;
    spec.design_snr_db = design_snr_db;
    spec.frozen_set = construct_frozen_set(block_len_n, info_len_k, design_snr_db);
    spec.crc = std::move(crc);
    spec.systematic = systematic;
    validate(spec);
    return spec;
}

void to_json(nlohmann::json& j, const CrcSpec& c) {
    j = nlohmann::json{{"width", c.width},
                       {"polynomial", c.polynomial},
                       {"init_value", c.init_value},
                       {"reflect_in", c.reflect_in},
                       {"reflect_out", c.reflect_out},
                       {"final_xor", c.final_xor}};
}

void from_json(const nlohmann::json& j, CrcSpec& c) {
    j.at("width").get_to(c.width);
    j.at("polynomial").get_to(c.polynomial);
    j.at("init_value").get_to(c.init_value);
    j.at("reflect_in").get_to(c.reflect_in);
    j.at("reflect_out").get_to(c.reflect_out);
    j.at("final_xor").get_to(c.final_xor);
}

void to_json(nlohmann::json& j, const CodeSpec& s) {
    j = nlohmann::json{{"block_len_n", s.block_len_n},
                       {"info_len_k", s.info_len_k},
                       {"frozen_set", s.frozen_set},
                       {"design_snr_db", s.design_snr_db},
                       {"systematic", s.systematic}};
    if (s.crc)
        j["crc"] = *s.crc;
    else
        j["crc"] = nullptr;
}

void from_json(const nlohmann::json& j, CodeSpec& s) {
    j.at("block_len_n").get_to(s.block_len_n);
    j.at("info_len_k").get_to(s.info_len_k);
    j.at("frozen_set").get_to(s.frozen_set);
    j.at("design_snr_db").get_to(s.design_snr_db);
    j.at("systematic").get_to(s.systematic);
    if (j.contains("crc") && !j.at("crc").is_null())
        s.crc = j.at("crc").get<CrcSpec>();
    else
        s.crc = std::nullopt;
    validate(s);
}

}  // namespace polarbd
