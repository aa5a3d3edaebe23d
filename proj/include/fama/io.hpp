#pragma once

#include <string>

#include "fama/harness.hpp"

namespace fama {

// results.csv: `sweep_value,strategy,mean_se,std_se,trials,seed`, one row per
// (sweep point, strategy), floats at 12 significant digits, LF endings.
std::string results_csv(const SweepResult& result);

// Whitespace-separated columns for external plotting: sweep value then one
// mean-SE column per strategy.
std::string plot_data(const SweepResult& result);

// Run provenance: everything needed to reproduce the result files.
struct RunInfo {
    std::string subcommand;
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> config_echo;
    int workers = 0;
    double wall_seconds = 0;
};

std::string manifest_json(const SweepResult& result, const RunInfo& info);

// Writes `text` to `dir/name`. Refuses to overwrite unless `force`; creates
// the directory when missing.
void write_result_file(const std::string& dir, const std::string& name, const std::string& text,
                       bool force);

std::string version_string();

}  // namespace fama
