#pragma once

#include <iosfwd>
#include <string>
#include <utility>

#include <json.hpp>

#include "polarbd/sim/runners.hpp"

namespace polarbd {

inline constexpr const char* kToolVersion = "polarbd 0.1.0";

struct EmitMeta {
    std::string tool_version = kToolVersion;
    std::uint64_t seed = 0;
    std::string config_hash;
    std::vector<std::string> notes;
};

// 17 significant digits: parses back to the identical double.
std::string format_double(double v);

std::uint64_t fnv1a64(const std::string& s);
std::string config_hash(const nlohmann::json& config);

// One CdfResult per simulated Eb/N0 value.
using CdfSeries = std::vector<std::pair<double, CdfResult>>;

void emit_records_csv(std::ostream& os, const std::vector<TrialRecord>& records,
                      const EmitMeta& meta);
void emit_cdf_csv(std::ostream& os, const CdfSeries& series, const EmitMeta& meta);
void emit_roc_csv(std::ostream& os, const std::vector<RocPoint>& points, const EmitMeta& meta);
void emit_fer_csv(std::ostream& os, const std::vector<FerPoint>& points, const EmitMeta& meta);
void emit_searchspace_csv(std::ostream& os, const SearchSpaceReport& report, const EmitMeta& meta);
void emit_trace_csv(std::ostream& os, const std::vector<MetricTraceRow>& trace,
                    const EmitMeta& meta);

nlohmann::json records_to_json(const std::vector<TrialRecord>& records, const EmitMeta& meta);
nlohmann::json cdf_to_json(const CdfSeries& series, const EmitMeta& meta);
nlohmann::json roc_to_json(const std::vector<RocPoint>& points, const EmitMeta& meta);
nlohmann::json fer_to_json(const std::vector<FerPoint>& points, const EmitMeta& meta);
nlohmann::json searchspace_to_json(const SearchSpaceReport& report, const EmitMeta& meta);

// Rates backed by fewer than 10 error events get flagged in output metadata.
std::vector<std::string> low_confidence_notes(const std::vector<RocPoint>& points);
std::vector<std::string> low_confidence_notes(const std::vector<FerPoint>& points);

}  // namespace polarbd
