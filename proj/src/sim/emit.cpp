#include "polarbd/sim/emit.hpp"

#include <cstdio>
#include <ostream>

namespace polarbd {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string config_hash(const nlohmann::json& config) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(config.dump())));
    return buf;
}

namespace {

void write_meta(std::ostream& os, const EmitMeta& meta) {
    os << "# tool_version=" << meta.tool_version << "\n";
    os << "# seed=" << meta.seed << "\n";
    if (!meta.config_hash.empty()) os << "# config_hash=" << meta.config_hash << "\n";
    for (const auto& note : meta.notes) os << "# note=" << note << "\n";
}

nlohmann::json meta_to_json(const EmitMeta& meta) {
    nlohmann::json j;
    j["tool_version"] = meta.tool_version;
    j["seed"] = meta.seed;
    j["config_hash"] = meta.config_hash;
    j["notes"] = meta.notes;
    return j;
}

nlohmann::json record_to_json(const TrialRecord& r) {
    nlohmann::json j;
    j["trial_index"] = r.trial_index;
    j["scenario"] = scenario_name(r.scenario);
    j["ebn0_db"] = r.ebn0_db;
    j["metric_d"] = r.metric_d;
    j["hypothesis"] = r.hypothesis == Hypothesis::H1 ? 1 : 0;
    j["decodable"] = r.decodable;
    return j;
}

}  // namespace

void emit_records_csv(std::ostream& os, const std::vector<TrialRecord>& records,
                      const EmitMeta& meta) {
    write_meta(os, meta);
    os << "trial_index,scenario,ebn0_db,metric_d,hypothesis,decodable\n";
    for (const auto& r : records) {
        os << r.trial_index << ',' << scenario_name(r.scenario) << ','
           << format_double(r.ebn0_db) << ',' << format_double(r.metric_d) << ','
           << (r.hypothesis == Hypothesis::H1 ? 1 : 0) << ',' << (r.decodable ? 1 : 0) << "\n";
    }
}

void emit_cdf_csv(std::ostream& os, const CdfSeries& series, const EmitMeta& meta) {
    write_meta(os, meta);
    os << "ebn0_db,scenario,metric_d,cdf\n";
    for (const auto& [ebn0, result] : series) {
        for (const auto& sc : result.per_scenario) {
            const auto& sorted = sc.cdf.sorted_samples();
            const double n = static_cast<double>(sorted.size());
            for (std::size_t i = 0; i < sorted.size(); ++i) {
                os << format_double(ebn0) << ',' << scenario_name(sc.scenario) << ','
                   << format_double(sorted[i]) << ','
                   << format_double(static_cast<double>(i + 1) / n) << "\n";
            }
        }
    }
}

void emit_roc_csv(std::ostream& os, const std::vector<RocPoint>& points, const EmitMeta& meta) {
    write_meta(os, meta);
    os << "threshold_d,p_miss,p_fa,n_miss,n_fa,n_f1,n_f0\n";
    for (const auto& p : points) {
        os << format_double(p.threshold_d) << ',' << format_double(p.p_miss) << ','
           << format_double(p.p_fa) << ',' << p.n_miss << ',' << p.n_fa << ',' << p.n_f1 << ','
           << p.n_f0 << "\n";
    }
}

void emit_fer_csv(std::ostream& os, const std::vector<FerPoint>& points, const EmitMeta& meta) {
    write_meta(os, meta);
    os << "ebn0_db,fer,ber,frames,frame_errors,bit_errors\n";
    for (const auto& p : points) {
        os << format_double(p.ebn0_db) << ',' << format_double(p.fer) << ','
           << format_double(p.ber) << ',' << p.frames << ',' << p.frame_errors << ','
           << p.bit_errors << "\n";
    }
}

void emit_searchspace_csv(std::ostream& os, const SearchSpaceReport& report,
                          const EmitMeta& meta) {
    write_meta(os, meta);
    os << "# n_candidates=" << report.n_candidates << "\n";
    os << "# n_valid=" << report.n_valid << "\n";
    os << "# threshold_d=" << format_double(report.threshold_d) << "\n";
    os << "# mean_retained=" << format_double(report.mean_retained) << "\n";
    os << "# frac_all_valid_retained=" << format_double(report.frac_all_valid_retained) << "\n";
    os << "# valid_retention_rate=" << format_double(report.valid_retention_rate) << "\n";
    os << "# rndtx_retention_rate=" << format_double(report.rndtx_retention_rate) << "\n";
    os << "# notx_retention_rate=" << format_double(report.notx_retention_rate) << "\n";
    os << "grid_index,retained_total,retained_valid,retained_rndtx,retained_notx,"
          "n_rndtx,n_notx,all_valid_retained\n";
    for (const auto& row : report.rows) {
        os << row.grid_index << ',' << row.retained_total << ',' << row.retained_valid << ','
           << row.retained_rndtx << ',' << row.retained_notx << ',' << row.n_rndtx << ','
           << row.n_notx << ',' << (row.all_valid_retained ? 1 : 0) << "\n";
    }
}

void emit_trace_csv(std::ostream& os, const std::vector<MetricTraceRow>& trace,
                    const EmitMeta& meta) {
    write_meta(os, meta);
    os << "leaf_index,kind,nv,delta_d,cumulative_d\n";
    for (const auto& row : trace) {
        os << row.leaf_index << ',' << node_kind_name(row.kind) << ',' << row.nv << ','
           << format_double(row.delta_d) << ',' << format_double(row.cumulative_d) << "\n";
    }
}

nlohmann::json records_to_json(const std::vector<TrialRecord>& records, const EmitMeta& meta) {
    nlohmann::json j;
    j["meta"] = meta_to_json(meta);
    auto rows = nlohmann::json::array();
    for (const auto& r : records) rows.push_back(record_to_json(r));
    j["records"] = std::move(rows);
    return j;
}

nlohmann::json cdf_to_json(const CdfSeries& series, const EmitMeta& meta) {
    nlohmann::json j;
    j["meta"] = meta_to_json(meta);
    auto entries = nlohmann::json::array();
    for (const auto& [ebn0, result] : series) {
        nlohmann::json e;
        e["ebn0_db"] = ebn0;
        auto scenarios = nlohmann::json::array();
        for (const auto& sc : result.per_scenario) {
            nlohmann::json s;
            s["scenario"] = scenario_name(sc.scenario);
            s["samples"] = sc.cdf.sorted_samples();
            scenarios.push_back(std::move(s));
        }
        e["scenarios"] = std::move(scenarios);
        entries.push_back(std::move(e));
    }
    j["series"] = std::move(entries);
    return j;
}

nlohmann::json roc_to_json(const std::vector<RocPoint>& points, const EmitMeta& meta) {
    nlohmann::json j;
    j["meta"] = meta_to_json(meta);
    auto rows = nlohmann::json::array();
    for (const auto& p : points) {
        nlohmann::json r;
        r["threshold_d"] = p.threshold_d;
        r["p_miss"] = p.p_miss;
        r["p_fa"] = p.p_fa;
        r["n_miss"] = p.n_miss;
        r["n_fa"] = p.n_fa;
        r["n_f1"] = p.n_f1;
        r["n_f0"] = p.n_f0;
        rows.push_back(std::move(r));
    }
    j["points"] = std::move(rows);
    return j;
}

nlohmann::json fer_to_json(const std::vector<FerPoint>& points, const EmitMeta& meta) {
    nlohmann::json j;
    j["meta"] = meta_to_json(meta);
    auto rows = nlohmann::json::array();
    for (const auto& p : points) {
        nlohmann::json r;
        r["ebn0_db"] = p.ebn0_db;
        r["fer"] = p.fer;
        r["ber"] = p.ber;
        r["frames"] = p.frames;
        r["frame_errors"] = p.frame_errors;
        r["bit_errors"] = p.bit_errors;
        rows.push_back(std::move(r));
    }
    j["points"] = std::move(rows);
    return j;
}

nlohmann::json searchspace_to_json(const SearchSpaceReport& report, const EmitMeta& meta) {
    nlohmann::json j;
    j["meta"] = meta_to_json(meta);
    j["grids"] = report.grids;
    j["n_candidates"] = report.n_candidates;
    j["n_valid"] = report.n_valid;
    j["threshold_d"] = report.threshold_d;
    j["mean_retained"] = report.mean_retained;
    j["frac_all_valid_retained"] = report.frac_all_valid_retained;
    j["valid_retention_rate"] = report.valid_retention_rate;
    j["rndtx_retention_rate"] = report.rndtx_retention_rate;
    j["notx_retention_rate"] = report.notx_retention_rate;
    auto rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        nlohmann::json r;
        r["grid_index"] = row.grid_index;
        r["retained_total"] = row.retained_total;
        r["retained_valid"] = row.retained_valid;
        r["retained_rndtx"] = row.retained_rndtx;
        r["retained_notx"] = row.retained_notx;
        r["n_rndtx"] = row.n_rndtx;
        r["n_notx"] = row.n_notx;
        r["valid_positions"] = row.valid_positions;
        r["surviving_valid"] = row.surviving_valid;
        r["all_valid_retained"] = row.all_valid_retained;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

std::vector<std::string> low_confidence_notes(const std::vector<RocPoint>& points) {
    std::size_t miss_low = 0;
    std::size_t fa_low = 0;
    for (const auto& p : points) {
        if (p.n_miss < 10) ++miss_low;
        if (p.n_fa < 10) ++fa_low;
    }
    std::vector<std::string> notes;
    if (miss_low > 0) {
        notes.push_back("low_confidence: p_miss rests on fewer than 10 miss events at " +
                        std::to_string(miss_low) + " of " + std::to_string(points.size()) +
                        " thresholds");
    }
    if (fa_low > 0) {
        notes.push_back("low_confidence: p_fa rests on fewer than 10 false-alarm events at " +
                        std::to_string(fa_low) + " of " + std::to_string(points.size()) +
                        " thresholds");
    }
    return notes;
}

std::vector<std::string> low_confidence_notes(const std::vector<FerPoint>& points) {
    std::vector<std::string> notes;
    for (const auto& p : points) {
        if (p.frame_errors < 10) {
            notes.push_back("low_confidence: fer at " + format_double(p.ebn0_db) + " dB rests on " +
                            std::to_string(p.frame_errors) + " frame errors");
        }
        if (p.bit_errors < 10) {
            notes.push_back("low_confidence: ber at " + format_double(p.ebn0_db) + " dB rests on " +
                            std::to_string(p.bit_errors) + " bit errors");
        }
    }
    return notes;
}

}  // namespace polarbd
