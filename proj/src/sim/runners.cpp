#include "polarbd/sim/runners.hpp"

#include <algorithm>
#include <cmath>

#include "polarbd/sim/parallel.hpp"

namespace polarbd {

namespace {

// Trial-counter domains keep every runner's per-trial streams disjoint.
constexpr std::uint64_t kDomainCdfBase = 0;   // +scenario ordinal
constexpr std::uint64_t kDomainRocH1 = 4;
constexpr std::uint64_t kDomainRocH0 = 5;
constexpr std::uint64_t kDomainFerBase = 8;   // +grid point index
constexpr std::uint64_t kDomainSearch = 1024;

std::uint64_t trial_counter(std::uint64_t domain, std::uint64_t i) { return (domain << 40) | i; }

int scenario_ordinal(Scenario s) {
    switch (s) {
        case Scenario::NoTx: return 0;
        case Scenario::RndTx: return 1;
        case Scenario::RegTx: return 2;
    }
    return 0;
}

DetectorConfig full_traversal_config(DetectorConfig c) {
    c.early_stop = std::nullopt;
    return c;
}

ChannelConfig resolved_channel(const SimConfig& config) {
    ChannelConfig ch = config.channel;
    if (ch.rate_for_normalization <= 0.0)
        ch.rate_for_normalization =
            static_cast<double>(config.code.info_len_k) / config.code.block_len_n;
    return ch;
}

}  // namespace

CdfResult run_metric_cdf(const SimConfig& config, const CdfRequest& request) {
    validate(config.code);
    if (request.trials == 0) throw std::invalid_argument("cdf needs at least one trial");
    const ChannelConfig channel = resolved_channel(config);
    const DetectorConfig det_cfg = full_traversal_config(config.detector);
    auto tree = std::make_shared<const DecoderTree>(build_tree(config.code, config.tree));

    CdfResult result;
    for (Scenario scenario : request.scenarios) {
        const std::uint64_t domain = kDomainCdfBase + static_cast<std::uint64_t>(scenario_ordinal(scenario));
        std::vector<double> d_values(request.trials);
        std::vector<TrialRecord> recs(request.with_records ? request.trials : 0);
        parallel_ranges(0, request.trials, config.workers, [&](std::uint64_t lo, std::uint64_t hi) {
            Detector detector(tree, det_cfg);
            for (std::uint64_t i = lo; i < hi; ++i) {
                TrialRng rng(config.seed, trial_counter(domain, i));
                FrameSample frame = gen_frame(scenario, config.code, channel, rng);
                DetectionResult det = detector.detect(frame.llr);
                d_values[i] = det.metric_d;
                if (request.with_records) {
                    TrialRecord& r = recs[i];
                    r.trial_index = i;
                    r.scenario = scenario;
                    r.ebn0_db = channel.ebn0_db;
                    r.metric_d = det.metric_d;
                    r.hypothesis = det.hypothesis;
                    r.decodable = frame.tx_codeword && det.codeword &&
                                  *det.codeword == *frame.tx_codeword;
                }
            }
        });
        result.per_scenario.push_back({scenario, EmpiricalCdf(std::move(d_values))});
        result.records.insert(result.records.end(), recs.begin(), recs.end());
    }
    return result;
}

namespace {

std::vector<double> sweep_thresholds(const std::vector<double>& f0_sorted, double lo, double hi,
                                     int grid_points, const std::vector<double>& pfa_anchors) {
    std::vector<double> thresholds;
    if (grid_points < 2) throw std::invalid_argument("grid needs at least two points");
    for (int j = 0; j < grid_points; ++j)
        thresholds.push_back(lo + (hi - lo) * j / (grid_points - 1));
    const std::uint64_t n0 = f0_sorted.size();
    for (double q : pfa_anchors) {
        const auto k = static_cast<std::uint64_t>(std::llround(q * static_cast<double>(n0)));
        if (k >= 1 && k <= n0) thresholds.push_back(f0_sorted[n0 - k]);
    }
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
    return thresholds;
}

std::vector<RocPoint> sweep_roc(const std::vector<double>& f1_sorted,
                                const std::vector<double>& f0_sorted,
                                const std::vector<double>& thresholds) {
    std::vector<RocPoint> points;
    points.reserve(thresholds.size());
    const std::uint64_t n1 = f1_sorted.size(), n0 = f0_sorted.size();
    for (double d : thresholds) {
        RocPoint p;
        p.threshold_d = d;
        p.n_f1 = n1;
        p.n_f0 = n0;
        p.n_miss = static_cast<std::uint64_t>(
            std::lower_bound(f1_sorted.begin(), f1_sorted.end(), d) - f1_sorted.begin());
        p.n_fa = n0 - static_cast<std::uint64_t>(
                          std::lower_bound(f0_sorted.begin(), f0_sorted.end(), d) - f0_sorted.begin());
        p.p_miss = static_cast<double>(p.n_miss) / static_cast<double>(n1);
        p.p_fa = static_cast<double>(p.n_fa) / static_cast<double>(n0);
        points.push_back(p);
    }
    return points;
}

}  // namespace

RocResult run_roc(const SimConfig& config, const RocRequest& request) {
    validate(config.code);
    if (request.h0_trials == 0 || request.h1_trials == 0)
        throw std::invalid_argument("roc needs trials under both hypotheses");
    if (request.h0_notx_weight < 0.0 || request.h0_notx_weight > 1.0)
        throw std::invalid_argument("h0 mixture weight must lie in [0,1]");
    const ChannelConfig channel = resolved_channel(config);
    const DetectorConfig det_cfg = full_traversal_config(config.detector);
    auto tree = std::make_shared<const DecoderTree>(build_tree(config.code, config.tree));

    RocResult result;
    std::vector<double> h0_d(request.h0_trials);
    std::vector<Scenario> h0_scenario(request.h0_trials);
    std::vector<Hypothesis> h0_hyp(request.h0_trials);
    parallel_ranges(0, request.h0_trials, config.workers, [&](std::uint64_t lo, std::uint64_t hi) {
        Detector detector(tree, det_cfg);
        for (std::uint64_t i = lo; i < hi; ++i) {
            TrialRng rng(config.seed, trial_counter(kDomainRocH0, i));
            const Scenario s = request.h0_worst_case
                                   ? Scenario::RndTx
                                   : (rng.uniform01() < request.h0_notx_weight ? Scenario::NoTx
                                                                               : Scenario::RndTx);
            FrameSample frame = gen_frame(s, config.code, channel, rng);
            DetectionResult det = detector.detect(frame.llr);
            h0_d[i] = det.metric_d;
            h0_scenario[i] = s;
            h0_hyp[i] = det.hypothesis;
        }
    });

    std::vector<double> h1_d(request.h1_trials);
    std::vector<std::uint8_t> h1_decodable(request.h1_trials);
    std::vector<Hypothesis> h1_hyp(request.h1_trials);
    parallel_ranges(0, request.h1_trials, config.workers, [&](std::uint64_t lo, std::uint64_t hi) {
        Detector detector(tree, det_cfg);
        std::optional<ListCrcDecoder> list_dec;
        if (request.decoder == SubsequentDecoder::Scl)
            list_dec.emplace(config.code, request.list_size);
        for (std::uint64_t i = lo; i < hi; ++i) {
            TrialRng rng(config.seed, trial_counter(kDomainRocH1, i));
            FrameSample frame = gen_frame(Scenario::RegTx, config.code, channel, rng);
            DetectionResult det = detector.detect(frame.llr);
            h1_d[i] = det.metric_d;
            h1_hyp[i] = det.hypothesis;
            bool ok;
            if (request.decoder == SubsequentDecoder::Scl) {
                ListDecodeResult dec = list_dec->decode(frame.llr);
                ok = dec.codeword == *frame.tx_codeword;
            } else {
                ok = det.codeword && *det.codeword == *frame.tx_codeword;
            }
            h1_decodable[i] = ok ? 1u : 0u;
        }
    });

    result.f1_d.reserve(request.h1_trials);
    result.f0_d.reserve(request.h0_trials);
    result.f0_d.assign(h0_d.begin(), h0_d.end());
    for (std::uint64_t i = 0; i < request.h1_trials; ++i) {
        if (h1_decodable[i])
            result.f1_d.push_back(h1_d[i]);
        else
            result.f0_d.push_back(h1_d[i]);
    }
    result.regtx_undecodable = request.h1_trials - result.f1_d.size();
    if (result.f1_d.empty())
        throw std::runtime_error("no decodable RegTx frames; miss rate is undefined");
    std::sort(result.f1_d.begin(), result.f1_d.end());
    std::sort(result.f0_d.begin(), result.f0_d.end());
    result.n_f1 = result.f1_d.size();
    result.n_f0 = result.f0_d.size();

    const double lo = std::min(result.f0_d.front(), result.f1_d.front());
    const double hi = std::max(result.f0_d.back(), result.f1_d.back());
    result.points = sweep_roc(result.f1_d, result.f0_d,
                              sweep_thresholds(result.f0_d, lo, hi, request.grid_points,
                                               request.pfa_anchors));

    if (request.with_records) {
        result.records.reserve(request.h0_trials + request.h1_trials);
        for (std::uint64_t i = 0; i < request.h0_trials; ++i)
            result.records.push_back({i, h0_scenario[i], channel.ebn0_db, h0_d[i], h0_hyp[i], false});
        for (std::uint64_t i = 0; i < request.h1_trials; ++i)
            result.records.push_back({request.h0_trials + i, Scenario::RegTx, channel.ebn0_db,
                                      h1_d[i], h1_hyp[i], h1_decodable[i] != 0});
    }
    return result;
}

std::vector<FerPoint> run_fer_ber(const SimConfig& config, const FerRequest& request) {
    validate(config.code);
    if (request.ebn0_grid.empty()) throw std::invalid_argument("fer needs an Eb/N0 grid");
    if (request.batch_size == 0) throw std::invalid_argument("batch size must be positive");
    const auto pos = config.code.info_positions();

    std::vector<FerPoint> out;
    for (std::size_t p = 0; p < request.ebn0_grid.size(); ++p) {
        ChannelConfig channel = resolved_channel(config);
        channel.ebn0_db = request.ebn0_grid[p];
        const std::uint64_t domain = kDomainFerBase + p;

        FerPoint point;
        point.ebn0_db = channel.ebn0_db;
        std::vector<std::uint8_t> frame_err(request.batch_size);
        std::vector<std::uint32_t> bit_err(request.batch_size);
        while (point.frames < request.max_frames && point.frame_errors < request.min_errors) {
            const std::uint64_t batch =
                std::min<std::uint64_t>(request.batch_size, request.max_frames - point.frames);
            const std::uint64_t base = point.frames;
            parallel_ranges(0, batch, config.workers, [&](std::uint64_t lo, std::uint64_t hi) {
                std::optional<ScDecoder> sc;
                std::optional<ListCrcDecoder> scl;
                if (request.decoder == SubsequentDecoder::Sc)
                    sc.emplace(config.code);
                else
                    scl.emplace(config.code, request.list_size);
                for (std::uint64_t i = lo; i < hi; ++i) {
                    TrialRng rng(config.seed, trial_counter(domain, base + i));
                    FrameSample frame = gen_frame(Scenario::RegTx, config.code, channel, rng);
                    BitVec info;
                    if (request.decoder == SubsequentDecoder::Sc) {
                        info = extract_info(sc->decode(frame.llr), config.code);
                    } else {
                        ListDecodeResult dec = scl->decode(frame.llr);
                        info = extract_info({dec.codeword, dec.u_est}, config.code);
                    }
                    std::uint32_t errs = 0;
                    for (std::size_t b = 0; b < info.size(); ++b)
                        errs += info[b] != (*frame.tx_info)[b];
                    frame_err[i] = errs > 0;
                    bit_err[i] = errs;
                }
            });
            for (std::uint64_t i = 0; i < batch; ++i) {
                point.frame_errors += frame_err[i];
                point.bit_errors += bit_err[i];
            }
            point.frames += batch;
        }
        point.fer = static_cast<double>(point.frame_errors) / static_cast<double>(point.frames);
        point.ber = static_cast<double>(point.bit_errors) /
                    (static_cast<double>(point.frames) * static_cast<double>(pos.size()));
        out.push_back(point);
    }
    return out;
}

SearchSpaceReport run_search_space(const SimConfig& config, const SearchSpaceRequest& request) {
    validate(config.code);
    if (request.n_candidates < 1 || request.n_valid < 0 ||
        request.n_valid > request.n_candidates)
        throw std::invalid_argument("need 0 <= n_valid <= n_candidates, n_candidates >= 1");
    if (request.grids == 0) throw std::invalid_argument("need at least one grid");
    const ChannelConfig channel = resolved_channel(config);
    const DetectorConfig det_cfg = full_traversal_config(config.detector);
    auto tree = std::make_shared<const DecoderTree>(build_tree(config.code, config.tree));

    SearchSpaceReport report;
    report.grids = request.grids;
    report.n_candidates = request.n_candidates;
    report.n_valid = request.n_valid;
    report.threshold_d = config.detector.threshold_d;
    report.rows.resize(request.grids);

    parallel_ranges(0, request.grids, config.workers, [&](std::uint64_t lo, std::uint64_t hi) {
        Detector detector(tree, det_cfg);
        for (std::uint64_t g = lo; g < hi; ++g) {
            TrialRng rng(config.seed, trial_counter(kDomainSearch, g));
            SearchSpaceGridRow& row = report.rows[g];
            row.grid_index = g;

            std::vector<int> perm(static_cast<std::size_t>(request.n_candidates));
            for (int c = 0; c < request.n_candidates; ++c) perm[static_cast<std::size_t>(c)] = c;
            for (int c = request.n_candidates - 1; c > 0; --c) {
                const int j = static_cast<int>(rng.engine()() % static_cast<std::uint64_t>(c + 1));
                std::swap(perm[static_cast<std::size_t>(c)], perm[static_cast<std::size_t>(j)]);
            }
            std::vector<std::uint8_t> is_valid(static_cast<std::size_t>(request.n_candidates), 0u);
            row.valid_positions.assign(perm.begin(), perm.begin() + request.n_valid);
            std::sort(row.valid_positions.begin(), row.valid_positions.end());
            for (int v : row.valid_positions) is_valid[static_cast<std::size_t>(v)] = 1u;

            for (int c = 0; c < request.n_candidates; ++c) {
                Scenario s;
                if (is_valid[static_cast<std::size_t>(c)])
                    s = Scenario::RegTx;
                else
                    s = rng.uniform01() < request.h0_notx_weight ? Scenario::NoTx : Scenario::RndTx;
                FrameSample frame = gen_frame(s, config.code, channel, rng);
                DetectionResult det = detector.detect(frame.llr);
                const bool retained = det.metric_d >= config.detector.threshold_d;
                if (s == Scenario::RndTx) ++row.n_rndtx;
                if (s == Scenario::NoTx) ++row.n_notx;
                if (retained) {
                    ++row.retained_total;
                    if (s == Scenario::RegTx) {
                        ++row.retained_valid;
                        row.surviving_valid.push_back(c);
                    }
                    if (s == Scenario::RndTx) ++row.retained_rndtx;
                    if (s == Scenario::NoTx) ++row.retained_notx;
                }
            }
            row.all_valid_retained = row.retained_valid == request.n_valid;
        }
    });

    std::uint64_t retained_sum = 0, all_valid = 0;
    std::uint64_t valid_ret = 0, rnd_ret = 0, no_ret = 0, rnd_n = 0, no_n = 0;
    for (const auto& row : report.rows) {
        retained_sum += static_cast<std::uint64_t>(row.retained_total);
        all_valid += row.all_valid_retained ? 1u : 0u;
        valid_ret += static_cast<std::uint64_t>(row.retained_valid);
        rnd_ret += static_cast<std::uint64_t>(row.retained_rndtx);
        no_ret += static_cast<std::uint64_t>(row.retained_notx);
        rnd_n += static_cast<std::uint64_t>(row.n_rndtx);
        no_n += static_cast<std::uint64_t>(row.n_notx);
    }
    const double grids = static_cast<double>(request.grids);
    report.mean_retained = static_cast<double>(retained_sum) / grids;
    report.frac_all_valid_retained = static_cast<double>(all_valid) / grids;
    report.valid_retention_rate =
        request.n_valid ? static_cast<double>(valid_ret) / (grids * request.n_valid) : 0.0;
    report.rndtx_retention_rate = rnd_n ? static_cast<double>(rnd_ret) / static_cast<double>(rnd_n) : 0.0;
    report.notx_retention_rate = no_n ? static_cast<double>(no_ret) / static_cast<double>(no_n) : 0.0;
    return report;
}

}  // namespace polarbd
