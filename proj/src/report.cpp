#include "lpplab/report.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace lpplab {

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string report_json(const ExperimentReport& report) {
    nlohmann::json j;
    j["name"] = report.name;
    j["params"] = report.params;
    j["statistics"] = report.statistics;
    j["pass"] = report.pass;
    j["seed"] = report.seed;
    j["runtime_seconds"] = report.runtime_seconds;
    return j.dump(2) + "\n";
}

std::string statistics_json(const ExperimentReport& report) {
    nlohmann::json j = report.statistics;
    return j.dump();
}

std::string csv_header_comment(const ExperimentReport& report) {
    std::string out;
    out += "# name: " + report.name + "\n";
    out += "# seed: " + std::to_string(report.seed) + "\n";
    for (const auto& [key, value] : report.params)
        out += "# " + key + ": " + value + "\n";
    return out;
}

std::string report_csv(const ExperimentReport& report) {
    std::string out = csv_header_comment(report);
    if (report.columns.empty()) {
        out += "statistic,value\n";
        for (const auto& [key, value] : report.statistics)
            out += key + "," + format_double(value) + "\n";
        return out;
    }
    std::size_t rows = 0;
    bool first = true;
    for (const auto& [key, column] : report.columns) {
        out += first ? key : "," + key;
        first = false;
        rows = std::max(rows, column.size());
    }
    out += "\n";
    for (std::size_t r = 0; r < rows; ++r) {
        first = true;
        for (const auto& [key, column] : report.columns) {
            if (!first) out += ",";
            first = false;
            if (r < column.size()) out += format_double(column[r]);
        }
        out += "\n";
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace lpplab
