#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fama/receivers.hpp"

namespace fama {

enum class Strategy { slow_fama, mrc, dc, geport };

std::string strategy_name(Strategy s);
Strategy parse_strategy(const std::string& name);

inline double linear_snr(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

// What varies across sweep points. snr_db values are in dB (the receiver
// layer only ever sees linear snr); active_ports and total_ports values are
// integral. total_ports sweeps rebuild a line topology per point at the
// spec's fixed aperture.
struct SweepAxis {
    enum class Kind { snr_db, active_ports, total_ports };
    Kind kind = Kind::snr_db;
    std::vector<double> values;
};

struct ExperimentSpec {
    PortTopology topology;
    int users = 4;            // K = M
    int active_ports = 2;     // L (unless swept)
    double snr_db = 15.0;     // base SNR (unless swept)
    SweepAxis axis;
    std::vector<Strategy> strategies{Strategy::slow_fama, Strategy::mrc, Strategy::dc,
                                     Strategy::geport};
    int trials = 2000;
    std::uint64_t master_seed = 1;
    std::optional<int> target_user;  // empty = average SE over all users
    GeportOptions geport;

    void validate() const;
};

struct CellStats {
    double mean = 0;
    double stddev = 0;  // sample standard deviation
    int count = 0;
};

// Per-trial SE values for every (sweep point, strategy) cell, aggregated with
// compensated summation in trial order so results do not depend on worker
// count. One channel draw per trial is shared across sweep points (paired
// comparison) except for total_ports sweeps where dimensions differ.
struct SweepResult {
    ExperimentSpec spec;
    std::vector<double> sweep_values;
    // values[point][strategy][trial]
    std::vector<std::vector<std::vector<double>>> values;

    CellStats stats(int point, int strategy) const;
};

SweepResult run_experiment(const ExperimentSpec& spec, int workers = 0);

// Raw ordering statistics per sweep point: strategies sorted by mean SE plus
// paired mean differences with their standard errors.
struct StrategyComparison {
    struct Pairwise {
        Strategy a, b;
        double mean_diff = 0;  // mean(a − b), paired per trial
        double se_diff = 0;    // std(a − b)/√trials
    };
    struct Point {
        double sweep_value = 0;
        std::vector<std::pair<Strategy, double>> ranked;  // best first
        std::vector<Pairwise> pairs;
    };
    std::vector<Point> points;
};

StrategyComparison compare_strategies(const SweepResult& result);

std::string format_comparison(const StrategyComparison& cmp);

}  // namespace fama
