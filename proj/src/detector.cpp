#include "polarbd/detector.hpp"

#include <cmath>

namespace polarbd {

void to_json(nlohmann::json& j, const DetectorConfig& c) {
    j = nlohmann::json{{"threshold_d", c.threshold_d},
                       {"spc_update_fraction", c.spc_update_fraction},
                       {"spc_scale", c.spc_scale}};
    j["spc_max_size"] = c.spc_max_size ? nlohmann::json(*c.spc_max_size) : nlohmann::json(nullptr);
    if (c.early_stop)
        j["early_stop"] = {{"accept_at", c.early_stop->accept_at},
                           {"min_fraction_traversed", c.early_stop->min_fraction_traversed}};
    else
        j["early_stop"] = nullptr;
}

void from_json(const nlohmann::json& j, DetectorConfig& c) {
    j.at("threshold_d").get_to(c.threshold_d);
    j.at("spc_update_fraction").get_to(c.spc_update_fraction);
    j.at("spc_scale").get_to(c.spc_scale);
    if (j.contains("spc_max_size") && !j.at("spc_max_size").is_null())
        c.spc_max_size = j.at("spc_max_size").get<int>();
    else
        c.spc_max_size = std::nullopt;
    if (j.contains("early_stop") && !j.at("early_stop").is_null()) {
        EarlyStopConfig es;
        j.at("early_stop").at("accept_at").get_to(es.accept_at);
        j.at("early_stop").at("min_fraction_traversed").get_to(es.min_fraction_traversed);
        c.early_stop = es;
    } else {
        c.early_stop = std::nullopt;
    }
}

double metric_update_rate0(double d, const double* alpha, int nv) {
    if (nv < 1) throw std::invalid_argument("rate-0 update needs nv >= 1");
    double s = 0.0;
    for (int i = 0; i < nv; ++i) s += alpha[i];
    return d + s / nv;
}

double metric_update_rep(double d, const double* alpha, int nv) {
    if (nv < 2) throw std::invalid_argument("repetition update needs nv >= 2");
    double s = 0.0;
    for (int i = 0; i < nv; ++i) s += alpha[i];
    return d + std::abs(s) / nv;
}

double metric_update_spc(double d, const double* alpha, int nv, const DetectorConfig& config) {
    if (nv < 2) throw std::invalid_argument("spc update needs nv >= 2");
    if (config.spc_max_size && nv > *config.spc_max_size) return d;
    std::uint8_t parity = 0u;
    double min_mag = std::abs(alpha[0]);
    for (int i = 0; i < nv; ++i) {
        parity ^= hard_decision(alpha[i]);
        min_mag = std::min(min_mag, std::abs(alpha[i]));
    }
    return d + config.spc_scale * (parity ? -min_mag : min_mag);
}

namespace {

void validate_config(const DetectorConfig& c) {
    if (c.spc_update_fraction < 0.0 || c.spc_update_fraction > 1.0)
        throw std::invalid_argument("spc_update_fraction must lie in [0,1]");
    if (c.spc_max_size && *c.spc_max_size < 1)
        throw std::invalid_argument("spc_max_size must be positive");
    if (c.early_stop && (c.early_stop->min_fraction_traversed < 0.0 ||
                         c.early_stop->min_fraction_traversed > 1.0))
        throw std::invalid_argument("min_fraction_traversed must lie in [0,1]");
}

}  // namespace

Detector::Detector(const CodeSpec& spec, DetectorConfig config, const TreeConfig& tree_config)
    : Detector(std::make_shared<const DecoderTree>(build_tree(spec, tree_config)),
               std::move(config)) {}

Detector::Detector(std::shared_ptr<const DecoderTree> tree, DetectorConfig config)
    : decoder_(std::move(tree)), config_(std::move(config)) {
    validate_config(config_);
    spc_budget_ = static_cast<int>(
        std::ceil(config_.spc_update_fraction * decoder_.tree().spc_leaf_count()));
}

DetectionResult Detector::detect(const LlrVec& llr, std::vector<MetricTraceRow>* trace) {
    const int n = decoder_.tree().block_len();
    if (trace) trace->clear();

    DetectionResult result;
    double d = 0.0;
    int spc_seen = 0;
    int bits_done = 0;

    BitVec beta;
    const bool completed = decoder_.sweep(llr, beta, [&](const TreeNode& node, const double* alpha,
                                                         int leaf_ordinal) {
        double delta = 0.0;
        switch (node.kind) {
            case NodeKind::Rate0: delta = metric_update_rate0(0.0, alpha, node.size); break;
            case NodeKind::Rep: delta = metric_update_rep(0.0, alpha, node.size); break;
            case NodeKind::Spc:
                ++spc_seen;
                if (spc_seen <= spc_budget_) delta = metric_update_spc(0.0, alpha, node.size, config_);
                break;
            case NodeKind::Rate1: break;
            case NodeKind::Branch: break;
        }
        d += delta;
        bits_done = node.start + node.size;
        if (trace)
            trace->push_back({leaf_ordinal, node.kind, node.size, delta, d});
        if (config_.early_stop && d >= config_.early_stop->accept_at &&
            static_cast<double>(bits_done) / n >= config_.early_stop->min_fraction_traversed &&
            bits_done < n) {
            return false;
        }
        return true;
    });

    result.metric_d = d;
    result.traversed_fraction = static_cast<double>(bits_done) / n;
    if (completed) {
        result.hypothesis = d >= config_.threshold_d ? Hypothesis::H1 : Hypothesis::H0;
        result.codeword = beta;
        result.u_est = polar_transform(beta);
    } else {
        // Early termination only ever accepts.
        result.hypothesis = Hypothesis::H1;
    }
    return result;
}

DetectionResult detect(const LlrVec& llr, const CodeSpec& spec, const DetectorConfig& config,
                       const TreeConfig& tree_config) {
    return Detector(spec, config, tree_config).detect(llr);
}

}  // namespace polarbd
