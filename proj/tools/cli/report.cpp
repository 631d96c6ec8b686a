#include "cli/report.hpp"

#include "cli/io.hpp"

namespace chaosmark::cli {

using nlohmann::ordered_json;

ReportFormat parse_format(std::string_view name) {
    if (name == "json") return ReportFormat::Json;
    if (name == "csv") return ReportFormat::Csv;
    throw PreconditionError("unknown report format '" + std::string(name) + "' (expected json or csv)");
}

ordered_json report_header(std::string_view command, const ordered_json& config) {
    ordered_json j;
    j["schema"] = kReportSchema;
    j["command"] = command;
    j["config"] = config;
    return j;
}

ordered_json to_json(const WitnessReport& report) {
    ordered_json j;
    j["property"] = to_string(report.property);
    j["verdict"] = report.verdict;
    j["tolerance"] = report.tolerance;
    j["iterations_used"] = report.iterations_used;
    ordered_json inputs = ordered_json::object();
    for (const auto& [k, v] : report.inputs) inputs[k] = v;
    j["inputs"] = std::move(inputs);
    ordered_json measured = ordered_json::object();
    for (const auto& [k, v] : report.measured) measured[k] = v;
    j["measured"] = std::move(measured);
    ordered_json flags = ordered_json::object();
    for (const auto& [k, v] : report.flags) flags[k] = v;
    j["flags"] = std::move(flags);
    ordered_json points = ordered_json::array();
    for (const auto& p : report.constructed) points.push_back(to_json(p));
    j["constructed_points"] = std::move(points);
    return j;
}

ordered_json to_json(const OrbitTrace& trace) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : trace.points) {
        ordered_json row;
        row["step"] = r.step;
        row["distance"] = r.distance;
        row["media_distance"] = r.media_distance;
        if (r.input_distance) row["input_distance"] = *r.input_distance;
        row["skipped"] = r.skipped;
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

std::string scalar_text(const ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return format_double(v.get<double>());
    return v.dump();
}

}  // namespace

std::string witness_csv(const WitnessReport& report, const ordered_json& config) {
    std::string out = "key,value\n";
    auto row = [&out](std::string_view k, std::string_view v) {
        out.append(k).append(",").append(v).append("\n");
    };
    row("schema", kReportSchema);
    for (const auto& [k, v] : config.items()) row("config." + k, scalar_text(v));
    row("property", to_string(report.property));
    row("verdict", report.verdict ? "true" : "false");
    row("tolerance", format_double(report.tolerance));
    row("iterations_used", std::to_string(report.iterations_used));
    for (const auto& [k, v] : report.inputs) row("inputs." + k, format_double(v));
    for (const auto& [k, v] : report.measured) row("measured." + k, format_double(v));
    for (const auto& [k, v] : report.flags) row("flags." + k, v ? "true" : "false");
    return out;
}

std::string trace_csv(const OrbitTrace& trace) {
    std::string out = "step,distance,media_distance,input_distance,skipped\n";
    for (const auto& r : trace.points) {
        out += std::to_string(r.step);
        out += ',';
        out += format_double(r.distance);
        out += ',';
        out += format_double(r.media_distance);
        out += ',';
        if (r.input_distance) out += format_double(*r.input_distance);
        out += ',';
        out += r.skipped ? "true" : "false";
        out += '\n';
    }
    return out;
}

}  // namespace chaosmark::cli
