#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace lpplab {

/*
 * One experiment's outcome. `pass` is a pure function of `statistics` and the
 * thresholds in thresholds.hpp; `statistics` must be reproducible byte for
 * byte for a fixed seed regardless of thread count, so it is kept separate
 * from wall-clock fields. `columns` holds per-replica raw data for the CSV
 * output; column lengths may differ.
 */
struct ExperimentReport {
    std::string name;
    std::map<std::string, std::string> params;
    std::map<std::string, double> statistics;
    std::map<std::string, std::vector<double>> columns;
    bool pass = false;
    std::uint64_t seed = 0;
    double runtime_seconds = 0.0;
};

// Full JSON object {name, params, statistics, pass, seed, runtime_seconds}.
std::string report_json(const ExperimentReport& report);

// JSON of the statistics map alone; this is the byte-identity contract.
std::string statistics_json(const ExperimentReport& report);

// Lines of the form "# key: value" echoing seed and params, for CSV headers.
std::string csv_header_comment(const ExperimentReport& report);

// Header comment, then either the per-replica columns or, when none were
// recorded, the statistics as key,value rows.
std::string report_csv(const ExperimentReport& report);

void write_text_file(const std::string& path, const std::string& content);

// Shortest round-tripping decimal form of v (numeric JSON fields and CSV).
std::string format_double(double v);

} // namespace lpplab
