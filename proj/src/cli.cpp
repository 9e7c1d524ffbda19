#include "polarbd/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "polarbd/encoder.hpp"
#include "polarbd/sim/emit.hpp"

namespace polarbd {
namespace {

struct Opts {
    // code construction
    int n = 512;
    int k = 80;
    double design_snr_db = 2.0;
    std::string crc = "none";
    bool systematic = true;
    std::string code_path;
    // channel and experiment shape
    std::string ebn0_db;  // comma list; per-command default resolved in the handler
    double rate = 0.0;    // Eb/N0 normalization rate, 0 = K/N
    std::string scenario;
    std::uint64_t trials = 10000;
    std::uint64_t min_errors = 100;
    std::uint64_t max_frames = 1000000;
    std::string decoder = "sc";
    int list_size = 8;
    // detector
    double threshold = 0.0;
    int spc_max_size = 0;  // 0 = no cap
    double spc_fraction = 1.0;
    double spc_scale = 1.0;
    double h0_mix = 0.5;
    bool h0_worst_case = false;
    // candidate search space
    int n_candidates = 44;
    int n_valid = 2;
    std::uint64_t grids = 1000;
    int grid_points = 512;
    // I/O
    std::string in_path = "-";
    std::string out = "-";
    std::string format = "csv";
    std::string trace_path;
    std::string records_path;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string config_path;
};

std::string read_input(const std::string& path) {
    std::ostringstream ss;
    if (path.empty() || path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open input file: " + path);
        ss << f.rdbuf();
    }
    return ss.str();
}

void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    fn(f);
    f.flush();
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string tok;
    for (char c : s) {
        if (c == ',') {
            if (!tok.empty()) out.push_back(tok);
            tok.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            tok.push_back(c);
        }
    }
    if (!tok.empty()) out.push_back(tok);
    return out;
}

std::vector<double> parse_double_list(const std::string& s, const std::string& flag) {
    std::vector<double> out;
    for (const auto& tok : split_list(s)) {
        try {
            std::size_t pos = 0;
            double v = std::stod(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw std::invalid_argument(flag + ": not a number: " + tok);
        }
    }
    if (out.empty()) throw std::invalid_argument(flag + ": empty value list");
    return out;
}

BitVec parse_bits(const std::string& content) {
    BitVec bits;
    for (char c : content) {
        if (c == '0' || c == '1') {
            bits.push_back(static_cast<std::uint8_t>(c - '0'));
        } else if (!std::isspace(static_cast<unsigned char>(c)) && c != ',') {
            throw std::invalid_argument(std::string("bit input must contain only 0/1: got '") + c +
                                        "'");
        }
    }
    return bits;
}

LlrVec parse_llrs(const std::string& content) {
    std::string cleaned = content;
    std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
    std::istringstream ss(cleaned);
    LlrVec llr;
    double v = 0.0;
    while (ss >> v) llr.push_back(v);
    if (!ss.eof()) throw std::invalid_argument("LLR input contains a non-numeric token");
    return llr;
}

CodeSpec build_spec(const Opts& o) {
    if (!o.code_path.empty()) {
        std::ifstream f(o.code_path, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot read code spec file: " + o.code_path);
        return nlohmann::json::parse(f).get<CodeSpec>();
    }
    std::optional<CrcSpec> crc;
    if (o.crc == "ccitt16") crc = crc_ccitt16();
    else if (o.crc != "none") throw std::invalid_argument("--crc must be none or ccitt16");
    return make_code_spec(o.n, o.k, o.design_snr_db, crc, o.systematic);
}

DetectorConfig build_detector(const Opts& o) {
    DetectorConfig c;
    c.threshold_d = o.threshold;
    if (o.spc_max_size > 0) c.spc_max_size = o.spc_max_size;
    c.spc_update_fraction = o.spc_fraction;
    c.spc_scale = o.spc_scale;
    return c;
}

SimConfig build_sim(const Opts& o, const CodeSpec& spec, double ebn0) {
    SimConfig s;
    s.code = spec;
    s.channel.ebn0_db = ebn0;
    s.channel.rate_for_normalization = o.rate;
    s.detector = build_detector(o);
    s.seed = o.seed;
    s.workers = o.threads;
    return s;
}

SubsequentDecoder parse_decoder(const Opts& o) {
    if (o.decoder == "sc") return SubsequentDecoder::Sc;
    if (o.decoder == "scl") return SubsequentDecoder::Scl;
    throw std::invalid_argument("--decoder must be sc or scl");
}

std::vector<Scenario> parse_scenarios(const std::string& s) {
    if (s.empty()) return {Scenario::NoTx, Scenario::RndTx, Scenario::RegTx};
    std::vector<Scenario> out;
    for (const auto& tok : split_list(s)) out.push_back(scenario_from_name(tok));
    if (out.empty()) throw std::invalid_argument("--scenario: empty value list");
    return out;
}

std::vector<double> resolve_ebn0(const Opts& o, const char* fallback) {
    return parse_double_list(o.ebn0_db.empty() ? fallback : o.ebn0_db, "--ebn0-db");
}

double single_ebn0(const Opts& o, const char* fallback, const char* cmd) {
    auto list = resolve_ebn0(o, fallback);
    if (list.size() != 1) {
        throw std::invalid_argument(std::string(cmd) +
                                    " takes a single --ebn0-db value, got a list");
    }
    return list.front();
}

// Semantic configuration only: paths, formats, and worker counts stay out so
// the hash is stable across output destinations and parallelism.
nlohmann::json base_config(const char* cmd, const CodeSpec& spec, const Opts& o) {
    nlohmann::json j;
    j["command"] = cmd;
    j["code"] = spec;
    j["rate"] = o.rate;
    return j;
}

EmitMeta make_meta(const Opts& o, const nlohmann::json& cfg) {
    EmitMeta m;
    m.seed = o.seed;
    m.config_hash = config_hash(cfg);
    return m;
}

int hyp_int(Hypothesis h) { return h == Hypothesis::H1 ? 1 : 0; }

void write_bit_rows_csv(std::ostream& os, const BitVec& bits) {
    os << "index,bit\n";
    for (std::size_t i = 0; i < bits.size(); ++i) os << i << ',' << int(bits[i]) << "\n";
}

void cmd_construct(const Opts& o) {
    CodeSpec spec = build_spec(o);
    nlohmann::json cfg = base_config("construct", spec, o);
    EmitMeta meta = make_meta(o, cfg);
    with_output(o.out, [&](std::ostream& os) {
        if (o.format == "json") {
            // Bare spec document, consumable via --code.
            os << nlohmann::json(spec).dump(2) << "\n";
            return;
        }
        os << "# tool_version=" << meta.tool_version << "\n";
        os << "# config_hash=" << meta.config_hash << "\n";
        os << "# n=" << spec.block_len_n << "\n";
        os << "# k=" << spec.info_len_k << "\n";
        os << "# design_snr_db=" << format_double(spec.design_snr_db) << "\n";
        os << "# crc=" << (spec.crc ? "ccitt16" : "none") << "\n";
        os << "# systematic=" << (spec.systematic ? "true" : "false") << "\n";
        os << "position,frozen\n";
        auto mask = spec.frozen_mask();
        for (std::size_t i = 0; i < mask.size(); ++i) os << i << ',' << int(mask[i]) << "\n";
    });
}

void cmd_encode(const Opts& o) {
    CodeSpec spec = build_spec(o);
    BitVec payload = parse_bits(read_input(o.in_path));
    if (static_cast<int>(payload.size()) != spec.payload_len()) {
        throw std::invalid_argument("encode expects " + std::to_string(spec.payload_len()) +
                                    " payload bits, got " + std::to_string(payload.size()));
    }
    BitVec info = spec.crc ? attach_crc(payload, *spec.crc) : payload;
    BitVec codeword = spec.systematic ? encode_systematic(info, spec)
                                      : encode_nonsystematic(expand_info(info, spec));
    nlohmann::json cfg = base_config("encode", spec, o);
    EmitMeta meta = make_meta(o, cfg);
    with_output(o.out, [&](std::ostream& os) {
        if (o.format == "json") {
            nlohmann::json j;
            j["tool_version"] = meta.tool_version;
            j["config_hash"] = meta.config_hash;
            j["payload"] = payload;
            j["info"] = info;
            j["codeword"] = codeword;
            os << j.dump(2) << "\n";
            return;
        }
        os << "# tool_version=" << meta.tool_version << "\n";
        os << "# config_hash=" << meta.config_hash << "\n";
        os << "# payload_len=" << payload.size() << "\n";
        write_bit_rows_csv(os, codeword);
    });
}

void cmd_decode(const Opts& o) {
    CodeSpec spec = build_spec(o);
    LlrVec llr = parse_llrs(read_input(o.in_path));
    if (static_cast<int>(llr.size()) != spec.block_len_n) {
        throw std::invalid_argument("decode expects " + std::to_string(spec.block_len_n) +
                                    " LLR values, got " + std::to_string(llr.size()));
    }
    if (o.list_size < 1) throw std::invalid_argument("--list-size must be >= 1");

    BitVec info;
    BitVec codeword;
    std::optional<bool> crc_pass;
    std::optional<double> path_metric;
    if (parse_decoder(o) == SubsequentDecoder::Sc) {
        DecodeResult r = decode_sc(llr, spec);
        info = extract_info(r, spec);
        codeword = std::move(r.codeword);
        if (spec.crc) crc_pass = crc_check(info, *spec.crc);
    } else {
        ListDecodeResult r = decode_list_crc(llr, spec, o.list_size);
        info = extract_info({r.codeword, r.u_est}, spec);
        codeword = std::move(r.codeword);
        crc_pass = r.crc_pass;
        path_metric = r.path_metric;
    }
    BitVec payload(info.begin(), info.begin() + spec.payload_len());

    nlohmann::json cfg = base_config("decode", spec, o);
    cfg["decoder"] = o.decoder;
    cfg["list-size"] = o.list_size;
    EmitMeta meta = make_meta(o, cfg);
    with_output(o.out, [&](std::ostream& os) {
        if (o.format == "json") {
            nlohmann::json j;
            j["tool_version"] = meta.tool_version;
            j["config_hash"] = meta.config_hash;
            j["decoder"] = o.decoder;
            j["payload"] = payload;
            j["info"] = info;
            j["codeword"] = codeword;
            j["crc_pass"] = crc_pass ? nlohmann::json(*crc_pass) : nlohmann::json(nullptr);
            j["path_metric"] =
                path_metric ? nlohmann::json(*path_metric) : nlohmann::json(nullptr);
            os << j.dump(2) << "\n";
            return;
        }
        os << "# tool_version=" << meta.tool_version << "\n";
        os << "# config_hash=" << meta.config_hash << "\n";
        os << "# decoder=" << o.decoder << "\n";
        if (crc_pass) os << "# crc_pass=" << (*crc_pass ? 1 : 0) << "\n";
        if (path_metric) os << "# path_metric=" << format_double(*path_metric) << "\n";
        write_bit_rows_csv(os, payload);
    });
}

void cmd_detect(const Opts& o) {
    CodeSpec spec = build_spec(o);
    LlrVec llr = parse_llrs(read_input(o.in_path));
    if (static_cast<int>(llr.size()) != spec.block_len_n) {
        throw std::invalid_argument("detect expects " + std::to_string(spec.block_len_n) +
                                    " LLR values, got " + std::to_string(llr.size()));
    }
    Detector det(spec, build_detector(o));
    std::vector<MetricTraceRow> trace;
    DetectionResult r = det.detect(llr, o.trace_path.empty() ? nullptr : &trace);

    nlohmann::json cfg = base_config("detect", spec, o);
    cfg["threshold"] = o.threshold;
    cfg["spc-max-size"] = o.spc_max_size;
    cfg["spc-fraction"] = o.spc_fraction;
    cfg["spc-scale"] = o.spc_scale;
    EmitMeta meta = make_meta(o, cfg);

    if (!o.trace_path.empty()) {
        with_output(o.trace_path, [&](std::ostream& os) { emit_trace_csv(os, trace, meta); });
    }
    with_output(o.out, [&](std::ostream& os) {
        if (o.format == "json") {
            nlohmann::json j;
            j["tool_version"] = meta.tool_version;
            j["config_hash"] = meta.config_hash;
            j["metric_d"] = r.metric_d;
            j["hypothesis"] = hyp_int(r.hypothesis);
            j["threshold_d"] = o.threshold;
            j["traversed_fraction"] = r.traversed_fraction;
            os << j.dump(2) << "\n";
            return;
        }
        os << "# tool_version=" << meta.tool_version << "\n";
        os << "# config_hash=" << meta.config_hash << "\n";
        os << "# threshold_d=" << format_double(o.threshold) << "\n";
        os << "metric_d,hypothesis,traversed_fraction\n";
        os << format_double(r.metric_d) << ',' << hyp_int(r.hypothesis) << ','
           << format_double(r.traversed_fraction) << "\n";
    });
}

void emit_records_file(const Opts& o, const std::vector<TrialRecord>& records,
                       const EmitMeta& meta) {
    if (o.records_path.empty()) return;
    with_output(o.records_path, [&](std::ostream& os) { emit_records_csv(os, records, meta); });
}

void cmd_cdf(const Opts& o) {
    CodeSpec spec = build_spec(o);
    std::vector<double> ebn0s = resolve_ebn0(o, "1,2,2.5,3");
    if (o.trials < 1) throw std::invalid_argument("--trials must be >= 1");
    const bool want_records = !o.records_path.empty();

    CdfSeries series;
    std::vector<TrialRecord> all_records;
    auto run_one = [&](double e, std::vector<Scenario> scenarios) {
        SimConfig sim = build_sim(o, spec, e);
        CdfRequest req;
        req.scenarios = std::move(scenarios);
        req.trials = o.trials;
        req.with_records = want_records;
        CdfResult r = run_metric_cdf(sim, req);
        if (want_records)
            all_records.insert(all_records.end(), r.records.begin(), r.records.end());
        series.emplace_back(e, std::move(r));
    };
    std::vector<Scenario> scenarios = parse_scenarios(o.scenario);
    if (o.h0_worst_case) {
        // Worst-case null hypothesis: random data at the highest simulated Eb/N0.
        for (double e : ebn0s) run_one(e, {Scenario::RegTx});
        run_one(*std::max_element(ebn0s.begin(), ebn0s.end()), {Scenario::RndTx});
    } else {
        for (double e : ebn0s) run_one(e, scenarios);
    }

    nlohmann::json cfg = base_config("cdf", spec, o);
    cfg["ebn0-db"] = ebn0s;
    {
        std::vector<std::string> names;
        for (Scenario s : scenarios) names.push_back(scenario_name(s));
        cfg["scenario"] = names;
    }
    cfg["trials"] = o.trials;
    cfg["threshold"] = o.threshold;
    cfg["spc-max-size"] = o.spc_max_size;
    cfg["spc-fraction"] = o.spc_fraction;
    cfg["spc-scale"] = o.spc_scale;
    cfg["h0-worst-case"] = o.h0_worst_case;
    EmitMeta meta = make_meta(o, cfg);

    emit_records_file(o, all_records, meta);
    with_output(o.out, [&](std::ostream& os) {
        if (o.format == "json") os << cdf_to_json(series, meta).dump(2) << "\n";
        else emit_cdf_csv(os, series, meta);
    });
}

void cmd_roc(const Opts& o) {
    CodeSpec spec = build_spec(o);
    double e = single_ebn0(o, "3", "roc");
    if (o.trials < 1) throw std::invalid_argument("--trials must be >= 1");
    if (o.h0_mix < 0.0 || o.h0_mix > 1.0)
        throw std::invalid_argument("--h0-mix must be in [0,1]");
    if (o.list_size < 1) throw std::invalid_argument("--list-size must be >= 1");
    if (o.grid_points < 2) throw std::invalid_argument("--grid-points must be >= 2");

    SimConfig sim = build_sim(o, spec, e);
    RocRequest req;
    req.h0_trials = o.trials;
    req.h1_trials = o.trials;
    req.h0_notx_weight = o.h0_mix;
    req.h0_worst_case = o.h0_worst_case;
    req.decoder = parse_decoder(o);
    req.list_size = o.list_size;
    req.grid_points = o.grid_points;
    req.with_records = !o.records_path.empty();
    RocResult res = run_roc(sim, req);

    nlohmann::json cfg = base_config("roc", spec, o);
    cfg["ebn0-db"] = std::vector<double>{e};
    cfg["trials"] = o.trials;
    cfg["decoder"] = o.decoder;
    cfg["list-size"] = o.list_size;
    cfg["h0-mix"] = o.h0_mix;
    cfg["h0-worst-case"] = o.h0_worst_case;
    cfg["grid-points"] = o.grid_points;
    cfg["spc-max-size"] = o.spc_max_size;
    cfg["spc-fraction"] = o.spc_fraction;
    cfg["spc-scale"] = o.spc_scale;
    EmitMeta meta = make_meta(o, cfg);
    meta.notes.push_back("ebn0_db=" + format_double(e));
    meta.notes.push_back("decoder=" + o.decoder);
    meta.notes.push_back("regtx_undecodable=" + std::to_string(res.regtx_undecodable));
    for (auto& n : low_confidence_notes(res.points)) meta.notes.push_back(std::move(n));

    emit_records_file(o, res.records, meta);
    with_output(o.out, [&](std::ostream& os) {
        if (o.format == "json") os << roc_to_json(res.points, meta).dump(2) << "\n";
        else emit_roc_csv(os, res.points, meta);
    });
}

void cmd_fer(const Opts& o) {
    CodeSpec spec = build_spec(o);
    std::vector<double> ebn0s = resolve_ebn0(o, "1,2,2.5,3");
    if (o.min_errors < 1) throw std::invalid_argument("--min-errors must be >= 1");
    if (o.max_frames < 1) throw std::invalid_argument("--max-frames must be >= 1");
    if (o.list_size < 1) throw std::invalid_argument("--list-size must be >= 1");

    SimConfig sim = build_sim(o, spec, ebn0s.front());
    FerRequest req;
    req.ebn0_grid = ebn0s;
    req.decoder = parse_decoder(o);
    req.list_size = o.list_size;
    req.min_errors = o.min_errors;
    req.max_frames = o.max_frames;
    std::vector<FerPoint> points = run_fer_ber(sim, req);

    nlohmann::json cfg = base_config("fer", spec, o);
    cfg["ebn0-db"] = ebn0s;
    cfg["decoder"] = o.decoder;
    cfg["list-size"] = o.list_size;
    cfg["min-errors"] = o.min_errors;
    cfg["max-frames"] = o.max_frames;
    EmitMeta meta = make_meta(o, cfg);
    meta.notes.push_back("decoder=" + o.decoder);
    for (auto& n : low_confidence_notes(points)) meta.notes.push_back(std::move(n));

    with_output(o.out, [&](std::ostream& os) {
        if (o.format == "json") os << fer_to_json(points, meta).dump(2) << "\n";
        else emit_fer_csv(os, points, meta);
    });
}

void cmd_searchspace(const Opts& o) {
    CodeSpec spec = build_spec(o);
    double e = single_ebn0(o, "3", "searchspace");
    if (o.n_candidates < 1) throw std::invalid_argument("--n-candidates must be >= 1");
    if (o.n_valid < 0 || o.n_valid > o.n_candidates)
        throw std::invalid_argument("--n-valid must be in [0, n-candidates]");
    if (o.grids < 1) throw std::invalid_argument("--grids must be >= 1");
    if (o.h0_mix < 0.0 || o.h0_mix > 1.0)
        throw std::invalid_argument("--h0-mix must be in [0,1]");

    SimConfig sim = build_sim(o, spec, e);
    SearchSpaceRequest req;
    req.n_candidates = o.n_candidates;
    req.n_valid = o.n_valid;
    req.h0_notx_weight = o.h0_mix;
    req.grids = o.grids;
    SearchSpaceReport report = run_search_space(sim, req);

    nlohmann::json cfg = base_config("searchspace", spec, o);
    cfg["ebn0-db"] = std::vector<double>{e};
    cfg["threshold"] = o.threshold;
    cfg["n-candidates"] = o.n_candidates;
    cfg["n-valid"] = o.n_valid;
    cfg["grids"] = o.grids;
    cfg["h0-mix"] = o.h0_mix;
    cfg["spc-max-size"] = o.spc_max_size;
    cfg["spc-fraction"] = o.spc_fraction;
    cfg["spc-scale"] = o.spc_scale;
    EmitMeta meta = make_meta(o, cfg);
    meta.notes.push_back("ebn0_db=" + format_double(e));

    with_output(o.out, [&](std::ostream& os) {
        if (o.format == "json") os << searchspace_to_json(report, meta).dump(2) << "\n";
        else emit_searchspace_csv(os, report, meta);
    });
}

std::string json_value_to_token(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    if (v.is_array()) {
        std::string out;
        for (const auto& item : v) {
            if (!out.empty()) out += ',';
            if (item.is_string()) out += item.get<std::string>();
            else out += item.dump();
        }
        return out;
    }
    throw std::invalid_argument("config value must be a scalar, string, or array: " + v.dump());
}

// Config-file keys mirror flag names without the leading dashes. Keys the
// invoked subcommand does not define are allowed only when some other
// subcommand defines them (shared config files); unknown keys are rejected.
std::vector<std::string> config_tokens(const nlohmann::json& cfg, const CLI::App* sub,
                                       const std::map<std::string, CLI::App*>& subs) {
    if (!cfg.is_object()) throw std::invalid_argument("config file must hold a JSON object");
    std::vector<std::string> tokens;
    for (const auto& [key, value] : cfg.items()) {
        if (value.is_null()) continue;
        const std::string flag = "--" + key;
        if (sub->get_option_no_throw(flag) != nullptr) {
            tokens.push_back(flag);
            tokens.push_back(json_value_to_token(value));
            continue;
        }
        bool known_elsewhere = false;
        for (const auto& [name, other] : subs) {
            if (other->get_option_no_throw(flag) != nullptr) {
                known_elsewhere = true;
                break;
            }
        }
        if (!known_elsewhere) throw std::invalid_argument("unknown config key: " + key);
    }
    return tokens;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args);
}

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"polar-code library and blind-detection simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    Opts o;
    std::map<std::string, CLI::App*> subs;
    auto make_sub = [&](const char* name, const char* desc) {
        CLI::App* s = app.add_subcommand(name, desc);
        s->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        subs[name] = s;
        return s;
    };
    auto add_code = [&](CLI::App* s) {
        s->add_option("--n", o.n, "block length N, a power of two (default 512)");
        s->add_option("--k", o.k, "information length K (default 80)");
        s->add_option("--design-snr-db", o.design_snr_db,
                      "construction design Eb/N0 in dB (default 2)");
        s->add_option("--crc", o.crc, "payload CRC (default none)")
            ->check(CLI::IsMember({"none", "ccitt16"}));
        s->add_option("--systematic", o.systematic, "systematic encoding, true|false (default true)");
        s->add_option("--code", o.code_path, "load the code spec from a JSON file instead");
    };
    auto add_io = [&](CLI::App* s) {
        s->add_option("--out", o.out, "output path, - for stdout (default -)");
        s->add_option("--format", o.format, "output format (default csv)")
            ->check(CLI::IsMember({"csv", "json"}));
        s->add_option("--config", o.config_path, "JSON config file; flags override its values");
    };
    auto add_sim = [&](CLI::App* s) {
        s->add_option("--seed", o.seed, "base RNG seed (default 1)");
        s->add_option("--threads", o.threads, "worker threads, 0 = hardware (default 0)");
        s->add_option("--rate", o.rate, "Eb/N0 normalization rate, 0 = K/N (default 0)");
    };
    auto add_detector = [&](CLI::App* s, bool with_threshold) {
        if (with_threshold)
            s->add_option("--threshold", o.threshold, "decision threshold d (default 0)");
        s->add_option("--spc-max-size", o.spc_max_size,
                      "largest single-parity-check span updating D, 0 = no cap");
        s->add_option("--spc-fraction", o.spc_fraction,
                      "leading fraction of single-parity-check leaves updating D (default 1)");
        s->add_option("--spc-scale", o.spc_scale, "weight on single-parity-check updates (default 1)");
    };
    auto add_decoder = [&](CLI::App* s) {
        s->add_option("--decoder", o.decoder, "subsequent decoder (default sc)")
            ->check(CLI::IsMember({"sc", "scl"}));
        s->add_option("--list-size", o.list_size, "list size for scl (default 8)");
    };

    {
        CLI::App* s = make_sub("construct", "build a code spec and its frozen set");
        add_code(s);
        add_io(s);
        s->add_option("--seed", o.seed, "recorded in output metadata");
    }
    {
        CLI::App* s = make_sub("encode", "encode payload bits into a codeword");
        add_code(s);
        add_io(s);
        s->add_option("--in", o.in_path, "payload bits file, - for stdin (default -)");
        s->add_option("--seed", o.seed, "recorded in output metadata");
    }
    {
        CLI::App* s = make_sub("decode", "decode channel LLRs");
        add_code(s);
        add_decoder(s);
        add_io(s);
        s->add_option("--in", o.in_path, "LLR file, - for stdin (default -)");
        s->add_option("--seed", o.seed, "recorded in output metadata");
    }
    {
        CLI::App* s = make_sub("detect", "run blind detection on channel LLRs");
        add_code(s);
        add_detector(s, true);
        add_io(s);
        s->add_option("--in", o.in_path, "LLR file, - for stdin (default -)");
        s->add_option("--trace", o.trace_path, "write the per-leaf metric trace CSV here");
        s->add_option("--seed", o.seed, "recorded in output metadata");
    }
    {
        CLI::App* s = make_sub("cdf", "empirical metric CDFs per scenario");
        add_code(s);
        add_sim(s);
        add_detector(s, true);
        add_io(s);
        s->add_option("--ebn0-db", o.ebn0_db, "comma list of Eb/N0 values (default 1,2,2.5,3)");
        s->add_option("--scenario", o.scenario,
                      "comma list drawn from notx,rndtx,regtx (default all)");
        s->add_option("--trials", o.trials, "trials per scenario (default 10000)");
        s->add_option("--h0-worst-case", o.h0_worst_case,
                      "true|false: null hypothesis as random data at the highest Eb/N0");
        s->add_option("--records-out", o.records_path, "write per-trial records CSV here");
    }
    {
        CLI::App* s = make_sub("roc", "miss rate vs false-alarm rate by threshold sweep");
        add_code(s);
        add_sim(s);
        add_detector(s, false);
        add_decoder(s);
        add_io(s);
        s->add_option("--ebn0-db", o.ebn0_db, "single Eb/N0 value (default 3)");
        s->add_option("--trials", o.trials, "trials per hypothesis (default 10000)");
        s->add_option("--h0-mix", o.h0_mix,
                      "probability an H0 trial is no-transmission (default 0.5)");
        s->add_option("--h0-worst-case", o.h0_worst_case,
                      "true|false: draw H0 as random data only");
        s->add_option("--grid-points", o.grid_points, "threshold grid size (default 512)");
        s->add_option("--records-out", o.records_path, "write per-trial records CSV here");
    }
    {
        CLI::App* s = make_sub("fer", "frame and bit error rates over an Eb/N0 grid");
        add_code(s);
        add_sim(s);
        add_decoder(s);
        add_io(s);
        s->add_option("--ebn0-db", o.ebn0_db, "comma list of Eb/N0 values (default 1,2,2.5,3)");
        s->add_option("--min-errors", o.min_errors,
                      "stop a point after this many frame errors (default 100)");
        s->add_option("--max-frames", o.max_frames, "frame cap per point (default 1000000)");
    }
    {
        CLI::App* s = make_sub("searchspace", "candidate-grid pruning experiment");
        add_code(s);
        add_sim(s);
        add_detector(s, true);
        add_io(s);
        s->add_option("--ebn0-db", o.ebn0_db, "single Eb/N0 value (default 3)");
        s->add_option("--n-candidates", o.n_candidates, "candidates per grid (default 44)");
        s->add_option("--n-valid", o.n_valid, "valid codewords per grid (default 2)");
        s->add_option("--grids", o.grids, "number of grids (default 1000)");
        s->add_option("--h0-mix", o.h0_mix,
                      "probability an invalid candidate is no-transmission (default 0.5)");
    }

    try {
        // The config file is injected as synthesized tokens ahead of the user's
        // flags; the take-last policy makes explicit flags override it.
        std::string sub_name;
        if (!args.empty() && !args[0].empty() && args[0][0] != '-') sub_name = args[0];
        std::string config_path;
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
            else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
        }
        std::vector<std::string> tokens;
        tokens.push_back("polarbd");
        if (!sub_name.empty() && subs.count(sub_name) && !config_path.empty()) {
            std::ifstream f(config_path, std::ios::binary);
            if (!f) throw std::invalid_argument("cannot read config file: " + config_path);
            nlohmann::json cfg = nlohmann::json::parse(f);
            tokens.push_back(sub_name);
            for (auto& t : config_tokens(cfg, subs.at(sub_name), subs)) tokens.push_back(std::move(t));
            tokens.insert(tokens.end(), args.begin() + 1, args.end());
        } else {
            tokens.insert(tokens.end(), args.begin(), args.end());
        }

        std::vector<const char*> argv;
        argv.reserve(tokens.size());
        for (const auto& t : tokens) argv.push_back(t.c_str());
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::CallForAllHelp& e) {
            return app.exit(e);
        } catch (const CLI::CallForVersion& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            app.exit(e);
            return 1;
        }

        if (subs.at("construct")->parsed()) cmd_construct(o);
        else if (subs.at("encode")->parsed()) cmd_encode(o);
        else if (subs.at("decode")->parsed()) cmd_decode(o);
        else if (subs.at("detect")->parsed()) cmd_detect(o);
        else if (subs.at("cdf")->parsed()) cmd_cdf(o);
        else if (subs.at("roc")->parsed()) cmd_roc(o);
        else if (subs.at("fer")->parsed()) cmd_fer(o);
        else if (subs.at("searchspace")->parsed()) cmd_searchspace(o);
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace polarbd
