#include "fama/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

namespace fama {

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::slow_fama: return "slow_fama";
        case Strategy::mrc: return "mrc";
        case Strategy::dc: return "dc";
        case Strategy::geport: return "geport";
    }
    return "?";
}

Strategy parse_strategy(const std::string& name) {
    if (name == "slow_fama") return Strategy::slow_fama;
    if (name == "mrc") return Strategy::mrc;
    if (name == "dc") return Strategy::dc;
    if (name == "geport") return Strategy::geport;
    throw ConfigError("unknown strategy '" + name + "'");
}

void ExperimentSpec::validate() const {
    if (users < 1) throw ValidationError("spec: users must be >= 1");
    if (trials < 1) throw ValidationError("spec: trials must be >= 1");
    if (strategies.empty()) throw ValidationError("spec: strategy set is empty");
    if (axis.values.empty()) throw ValidationError("spec: sweep axis has no values");
    for (size_t i = 1; i < axis.values.size(); ++i)
        if (!(axis.values[i] > axis.values[i - 1]))
            throw ValidationError("spec: sweep values must be strictly increasing");
    if (target_user && (*target_user < 0 || *target_user >= users))
        throw ValidationError("spec: target_user out of range");

    const int n = topology.ports();
    switch (axis.kind) {
        case SweepAxis::Kind::snr_db:
            if (active_ports < 1 || active_ports > n)
                throw ValidationError("spec: active_ports must be in [1, N]");
            break;
        case SweepAxis::Kind::active_ports:
            for (double v : axis.values) {
                if (v != std::floor(v) || v < 1 || v > n)
                    throw ValidationError("spec: swept active_ports must be integers in [1, N]");
            }
            break;
        case SweepAxis::Kind::total_ports:
            if (topology.kind != TopologyKind::line)
                throw ValidationError("spec: total_ports sweeps support line topologies only");
            for (double v : axis.values) {
                if (v != std::floor(v) || v < active_ports)
                    throw ValidationError("spec: swept port counts must be integers >= L");
            }
            break;
    }
    if (!(snr_db > -400 && snr_db < 400)) throw ValidationError("spec: snr_db out of range");
}

CellStats SweepResult::stats(int point, int strategy) const {
    const auto& v = values[point][strategy];
    CellStats s;
    s.count = int(v.size());
    if (v.empty()) return s;

    // Neumaier-compensated, in trial order.
    auto csum = [](const std::vector<double>& xs, auto&& f) {
        double sum = 0, comp = 0;
        for (const double raw : xs) {
            const double x = f(raw);
            const double t = sum + x;
            if (std::abs(sum) >= std::abs(x))
                comp += (sum - t) + x;
            else
                comp += (x - t) + sum;
            sum = t;
        }
        return sum + comp;
    };
    s.mean = csum(v, [](double x) { return x; }) / s.count;
    if (s.count > 1) {
        const double m = s.mean;
        const double ss = csum(v, [m](double x) { return (x - m) * (x - m); });
        s.stddev = std::sqrt(std::max(ss, 0.0) / (s.count - 1));
    }
    return s;
}

namespace {

struct PointSetup {
    double sweep_value = 0;
    double snr = 1.0;  // linear
    int active_ports = 1;
    const CorrelationMatrix* corr = nullptr;
};

struct Prepared {
    std::vector<CorrelationMatrix> correlations;  // one, or one per point for N sweeps
    std::vector<PointSetup> points;
    int min_active_ports = 1;
};

Prepared prepare(const ExperimentSpec& spec) {
    Prepared p;
    const double base_snr = linear_snr(spec.snr_db);

    if (spec.axis.kind == SweepAxis::Kind::total_ports) {
        p.correlations.reserve(spec.axis.values.size());
        for (double v : spec.axis.values)
            p.correlations.push_back(
                correlation_matrix(PortTopology::line(int(v), spec.topology.w1)));
        for (size_t i = 0; i < spec.axis.values.size(); ++i)
            p.points.push_back({spec.axis.values[i], base_snr, spec.active_ports,
                                &p.correlations[i]});
        p.min_active_ports = spec.active_ports;
        return p;
    }

    p.correlations.push_back(correlation_matrix(spec.topology));
    const CorrelationMatrix* corr = &p.correlations.front();
    if (spec.axis.kind == SweepAxis::Kind::snr_db) {
        for (double v : spec.axis.values)
            p.points.push_back({v, linear_snr(v), spec.active_ports, corr});
        p.min_active_ports = spec.active_ports;
    } else {
        int min_l = int(spec.axis.values.front());
        for (double v : spec.axis.values) {
            p.points.push_back({v, base_snr, int(v), corr});
            min_l = std::min(min_l, int(v));
        }
        p.min_active_ports = min_l;
    }
    return p;
}

bool uses(const ExperimentSpec& spec, Strategy s) {
    return std::find(spec.strategies.begin(), spec.strategies.end(), s) != spec.strategies.end();
}

// SE of one user under one strategy at one point, given precomputed pieces.
struct UserPointContext {
    const SignalMatrixPair* pair;
    const ChannelRealization* h;
    int user;
    double snr;
    int active_ports;
    const std::vector<int>* geport_survivors;  // null → run design_geport directly
    const GeportOptions* geport_options;
};

double strategy_se(Strategy s, const UserPointContext& ctx) {
    switch (s) {
        case Strategy::slow_fama: {
            const ReceiverDesign d = design_slow_fama(*ctx.pair, *ctx.h, ctx.user, ctx.snr);
            return spectral_efficiency(d.achieved_sinr);
        }
        case Strategy::mrc: {
            const ReceiverDesign d = design_mrc(*ctx.pair, *ctx.h, ctx.user, ctx.snr,
                                                ctx.active_ports);
            return spectral_efficiency(d.achieved_sinr);
        }
        case Strategy::dc: {
            const ReceiverDesign d = design_dc(*ctx.pair, *ctx.h, ctx.user, ctx.snr,
                                               ctx.active_ports);
            return spectral_efficiency(d.achieved_sinr);
        }
        case Strategy::geport: {
            if (ctx.geport_survivors) {
                const CombinerResult comb = solve_combiner(*ctx.pair, *ctx.geport_survivors);
                return spectral_efficiency(comb.sinr);
            }
            const ReceiverDesign d = design_geport(*ctx.pair, ctx.active_ports,
                                                   *ctx.geport_options);
            return spectral_efficiency(d.achieved_sinr);
        }
    }
    return 0;
}

// cell[point][strategy] for one trial, averaged (or projected) over users.
std::vector<std::vector<double>> run_trial(const ExperimentSpec& spec, const Prepared& prep,
                                           long trial) {
    const int n_points = int(prep.points.size());
    const int n_strats = int(spec.strategies.size());
    std::vector<std::vector<double>> cell(n_points, std::vector<double>(n_strats, 0.0));
    const TrialStream stream{spec.master_seed, std::uint64_t(trial)};

    std::vector<int> users;
    if (spec.target_user)
        users.push_back(*spec.target_user);
    else
        for (int k = 0; k < spec.users; ++k) users.push_back(k);

    auto accumulate = [&](int point, const UserPointContext& ctx) {
        for (int si = 0; si < n_strats; ++si) {
            try {
                cell[point][si] += strategy_se(spec.strategies[si], ctx);
            } catch (const std::exception& e) {
                throw Error("sweep point " + std::to_string(prep.points[point].sweep_value) +
                            ", strategy " + strategy_name(spec.strategies[si]) + ", user " +
                            std::to_string(ctx.user + 1) + ": " + e.what());
            }
        }
    };

    switch (spec.axis.kind) {
        case SweepAxis::Kind::snr_db: {
            const ChannelRealization h =
                sample_channels(*prep.points.front().corr, spec.users, spec.users, stream);
            for (int pi = 0; pi < n_points; ++pi) {
                const PointSetup& pt = prep.points[pi];
                for (int k : users) {
                    const SignalMatrixPair pair = build_pair(h, k, pt.snr);
                    accumulate(pi, {&pair, &h, k, pt.snr, pt.active_ports, nullptr, &spec.geport});
                }
            }
            break;
        }
        case SweepAxis::Kind::active_ports: {
            // One channel and pair per user; the greedy removal trajectory
            // does not depend on where it stops, so every L shares it.
            const ChannelRealization h =
                sample_channels(*prep.points.front().corr, spec.users, spec.users, stream);
            const double snr = prep.points.front().snr;
            const bool reuse_order = !spec.geport.loss_budget && uses(spec, Strategy::geport);
            for (int k : users) {
                const SignalMatrixPair pair = build_pair(h, k, snr);
                std::vector<int> removal_order;
                if (reuse_order)
                    removal_order = geport_removal_order(pair, prep.min_active_ports, spec.geport);
                for (int pi = 0; pi < n_points; ++pi) {
                    UserPointContext ctx{&pair, &h, k, snr, prep.points[pi].active_ports,
                                         nullptr, &spec.geport};
                    std::vector<int> survivors;
                    if (reuse_order) {
                        std::vector<bool> removed(pair.B.dim(), false);
                        const int drop = pair.B.dim() - ctx.active_ports;
                        for (int i = 0; i < drop; ++i) removed[removal_order[i]] = true;
                        for (int i = 0; i < pair.B.dim(); ++i)
                            if (!removed[i]) survivors.push_back(i);
                        ctx.geport_survivors = &survivors;
                    }
                    accumulate(pi, ctx);
                }
            }
            break;
        }
        case SweepAxis::Kind::total_ports: {
            for (int pi = 0; pi < n_points; ++pi) {
                const PointSetup& pt = prep.points[pi];
                const ChannelRealization h =
                    sample_channels(*pt.corr, spec.users, spec.users, stream);
                for (int k : users) {
                    const SignalMatrixPair pair = build_pair(h, k, pt.snr);
                    accumulate(pi, {&pair, &h, k, pt.snr, pt.active_ports, nullptr, &spec.geport});
                }
            }
            break;
        }
    }

    const double inv_users = 1.0 / double(users.size());
    for (auto& row : cell)
        for (double& v : row) v *= inv_users;
    return cell;
}

}  // namespace

SweepResult run_experiment(const ExperimentSpec& spec, int workers) {
    spec.validate();
    const Prepared prep = prepare(spec);

    SweepResult result;
    result.spec = spec;
    for (const PointSetup& p : prep.points) result.sweep_values.push_back(p.sweep_value);
    result.values.assign(prep.points.size(),
                         std::vector<std::vector<double>>(
                             spec.strategies.size(), std::vector<double>(spec.trials, 0.0)));

    if (workers <= 0) workers = int(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, spec.trials);

    std::atomic<long> next{0};
    std::mutex error_mutex;
    std::string first_error;

    auto body = [&] {
        while (true) {
            const long t = next.fetch_add(1);
            if (t >= spec.trials) return;
            try {
                const auto cell = run_trial(spec, prep, t);
                for (size_t pi = 0; pi < cell.size(); ++pi)
                    for (size_t si = 0; si < cell[pi].size(); ++si)
                        result.values[pi][si][t] = cell[pi][si];
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (first_error.empty()) {
                    std::ostringstream os;
                    os << "trial " << t << ": " << e.what();
                    first_error = os.str();
                }
                next.store(spec.trials);
                return;
            }
        }
    };

    if (workers == 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) pool.emplace_back(body);
        for (auto& th : pool) th.join();
    }
    if (!first_error.empty()) throw Error("run_experiment aborted at " + first_error);
    return result;
}

StrategyComparison compare_strategies(const SweepResult& result) {
    if (result.spec.strategies.size() < 2)
        throw ValidationError("compare_strategies: need at least two strategies");
    StrategyComparison cmp;
    const int n_strats = int(result.spec.strategies.size());
    for (size_t pi = 0; pi < result.sweep_values.size(); ++pi) {
        StrategyComparison::Point point;
        point.sweep_value = result.sweep_values[pi];
        for (int si = 0; si < n_strats; ++si)
            point.ranked.emplace_back(result.spec.strategies[si],
                                      result.stats(int(pi), si).mean);
        std::stable_sort(point.ranked.begin(), point.ranked.end(),
                         [](const auto& a, const auto& b) { return a.second > b.second; });

        for (int a = 0; a < n_strats; ++a) {
            for (int b = a + 1; b < n_strats; ++b) {
                const auto& va = result.values[pi][a];
                const auto& vb = result.values[pi][b];
                const int n = int(va.size());
                double mean = 0;
                for (int t = 0; t < n; ++t) mean += va[t] - vb[t];
                mean /= n;
                double ss = 0;
                for (int t = 0; t < n; ++t) {
                    const double d = va[t] - vb[t] - mean;
                    ss += d * d;
                }
                const double sd = n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
                point.pairs.push_back({result.spec.strategies[a], result.spec.strategies[b], mean,
                                       sd / std::sqrt(double(n))});
            }
        }
        cmp.points.push_back(std::move(point));
    }
    return cmp;
}

std::string format_comparison(const StrategyComparison& cmp) {
    std::ostringstream os;
    for (const auto& p : cmp.points) {
        os << "sweep value " << p.sweep_value << ":\n";
        for (const auto& [s, mean] : p.ranked)
            os << "  " << strategy_name(s) << " mean SE " << mean << "\n";
        for (const auto& pw : p.pairs)
            os << "  " << strategy_name(pw.a) << " - " << strategy_name(pw.b) << " = "
               << pw.mean_diff << " (se " << pw.se_diff << ")\n";
    }
    return os.str();
}

}  // namespace fama
