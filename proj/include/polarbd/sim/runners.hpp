#pragma once

#include "polarbd/list_decoder.hpp"
#include "polarbd/sim/records.hpp"

namespace polarbd {

struct SimConfig {
    CodeSpec code;
    ChannelConfig channel;
    DetectorConfig detector;
    TreeConfig tree;
    std::uint64_t seed = 1;
    int workers = 0;  // 0 = hardware concurrency
};

enum class SubsequentDecoder { Sc, Scl };

struct CdfRequest {
    std::vector<Scenario> scenarios{Scenario::NoTx, Scenario::RndTx, Scenario::RegTx};
    std::uint64_t trials = 10000;  // per scenario
    bool with_records = true;
};

struct ScenarioCdf {
    Scenario scenario;
    EmpiricalCdf cdf;
};

struct CdfResult {
    std::vector<ScenarioCdf> per_scenario;
    std::vector<TrialRecord> records;  // empty unless requested
};

// Metric distribution per scenario at the configured Eb/N0. Detection runs the
// full traversal (any early-stop setting is ignored); RegTx decodability is
// judged by the traversal's own codeword, which matches SC decoding bit-exactly.
CdfResult run_metric_cdf(const SimConfig& config, const CdfRequest& request);

struct RocRequest {
    std::uint64_t h0_trials = 10000;
    std::uint64_t h1_trials = 10000;
    double h0_notx_weight = 0.5;  // per-trial probability of NoTx under H0
    bool h0_worst_case = false;   // H0 drawn as RndTx only
    SubsequentDecoder decoder = SubsequentDecoder::Sc;
    int list_size = 8;
    int grid_points = 512;
    std::vector<double> pfa_anchors{1e-1, 1e-2, 1e-3};
    bool with_records = false;
};

struct RocResult {
    std::vector<RocPoint> points;  // threshold ascending
    std::uint64_t n_f1 = 0;        // decodable RegTx trials
    std::uint64_t n_f0 = 0;        // H0 trials plus undecodable RegTx trials
    std::uint64_t regtx_undecodable = 0;
    std::vector<double> f1_d;  // sorted
    std::vector<double> f0_d;  // sorted
    std::vector<TrialRecord> records;
};

// Threshold sweep over one sample set. F1 holds decodable RegTx trials; F0
// holds every H0 trial plus RegTx trials the subsequent decoder failed on.
RocResult run_roc(const SimConfig& config, const RocRequest& request);

struct FerRequest {
    std::vector<double> ebn0_grid;
    SubsequentDecoder decoder = SubsequentDecoder::Sc;
    int list_size = 8;
    std::uint64_t min_errors = 100;
    std::uint64_t max_frames = 1000000;
    std::uint64_t batch_size = 2000;
};

// Monte-Carlo FER/BER, stopping per point after the first whole batch that
// reaches min_errors (deterministic at any worker count). BER is counted over
// the K info positions.
std::vector<FerPoint> run_fer_ber(const SimConfig& config, const FerRequest& request);

struct SearchSpaceRequest {
    int n_candidates = 44;
    int n_valid = 2;
    double h0_notx_weight = 0.5;  // scenario mix for the invalid candidates
    std::uint64_t grids = 1;
};

struct SearchSpaceGridRow {
    std::uint64_t grid_index = 0;
    int retained_total = 0;
    int retained_valid = 0;
    int retained_rndtx = 0;
    int retained_notx = 0;
    int n_rndtx = 0;
    int n_notx = 0;
    std::vector<int> valid_positions;     // candidate indices carrying codewords
    std::vector<int> surviving_valid;     // subset retained by the detector
    bool all_valid_retained = false;
};

struct SearchSpaceReport {
    std::uint64_t grids = 0;
    int n_candidates = 0;
    int n_valid = 0;
    double threshold_d = 0.0;
    double mean_retained = 0.0;
    double frac_all_valid_retained = 0.0;
    double valid_retention_rate = 0.0;
    double rndtx_retention_rate = 0.0;
    double notx_retention_rate = 0.0;
    std::vector<SearchSpaceGridRow> rows;
};

// Candidate-grid pruning: each grid holds n_candidates frames, n_valid of them
// real codewords at randomized positions; the detector retains D >= threshold.
SearchSpaceReport run_search_space(const SimConfig& config, const SearchSpaceRequest& request);

}  // namespace polarbd
