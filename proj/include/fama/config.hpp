#pragma once

#include <map>
#include <string>
#include <vector>

#include "fama/harness.hpp"

namespace fama {

// Flat `key = value` config file: one pair per line, '#' starts a comment,
// blank lines ignored. List values are comma-separated or `start:step:stop`
// ranges. The full schema is documented in the README.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_text(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const;
    const std::string& raw(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    long get_int(const std::string& key, long fallback) const;
    double get_real(const std::string& key, double fallback) const;
    std::vector<double> get_list(const std::string& key) const;  // key must exist

    // All keys, in file order (for the manifest echo).
    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

private:
    long line_of(const std::string& key) const;
    [[noreturn]] void fail(const std::string& key, const std::string& why) const;

    std::string origin_;
    std::vector<std::pair<std::string, std::string>> entries_;
    std::map<std::string, std::pair<std::string, long>> values_;  // key -> (value, line)
};

// Builds the experiment from a config plus the sweep kind implied by the CLI
// subcommand. `overrides` are applied on top (seed, trials, strategies,
// target_user, geport_metric, geport_loss_budget).
ExperimentSpec build_experiment_spec(const Config& cfg, SweepAxis::Kind kind,
                                     const std::map<std::string, std::string>& overrides = {});

std::vector<Strategy> parse_strategy_list(const std::string& csv);

}  // namespace fama
