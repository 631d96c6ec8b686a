#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "chaosmark/chaos_analysis.hpp"

namespace chaosmark::cli {

inline constexpr std::string_view kReportSchema = "chaosmark/1";

enum class ReportFormat { Json, Csv };

ReportFormat parse_format(std::string_view name);

/// {"schema", "command", "config"} shared by every report.
nlohmann::ordered_json report_header(std::string_view command, const nlohmann::ordered_json& config);

nlohmann::ordered_json to_json(const WitnessReport& report);
nlohmann::ordered_json to_json(const OrbitTrace& trace);

/// `key,value` rows; the config is flattened into `config.<name>` rows.
std::string witness_csv(const WitnessReport& report, const nlohmann::ordered_json& config);
/// step,distance,media_distance,input_distance,skipped
std::string trace_csv(const OrbitTrace& trace);

}  // namespace chaosmark::cli
