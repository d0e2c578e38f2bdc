#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "ambsec/baselines.hpp"

// Seeded Monte Carlo harness. Squared Rayleigh gains are exponential, so
// each link gain is drawn directly as -theta * ln(u) with u uniform on
// (0, 1]. Draws are counter-based: every (master_seed, trial, link-role)
// triple maps to one value through a stateless mixer, which makes trials
// independent of execution order, keeps schemes on identical channels, and
// leaves existing trials untouched when sweep points or eavesdroppers are
// added.
namespace ambsec {

namespace detail {

inline constexpr std::uint64_t sm_mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Uniform on (0, 1] from 53 high bits; never 0, so the log is always finite.
inline constexpr double to_unit_interval(std::uint64_t s) {
    return static_cast<double>((s >> 11) + 1) * 0x1.0p-53;
}

}  // namespace detail

// Link-role ids for the counter-based generator. Eavesdropper k (0-based)
// uses 5 + 2k for its BS link and 6 + 2k for its BN link, so enlarging the
// eavesdropper set extends the draws without disturbing the shared prefix.
inline constexpr std::uint64_t kRoleGn = 0;
inline constexpr std::uint64_t kRoleGf = 1;
inline constexpr std::uint64_t kRoleGb = 2;
inline constexpr std::uint64_t kRoleHn = 3;
inline constexpr std::uint64_t kRoleHf = 4;

inline constexpr std::uint64_t ed_role_g(int k) { return 5 + 2 * static_cast<std::uint64_t>(k); }
inline constexpr std::uint64_t ed_role_h(int k) { return 6 + 2 * static_cast<std::uint64_t>(k); }

// One exponential gain draw with mean theta.
inline double exp_gain(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t role,
                       double theta) {
    detail::require(theta > 0.0, "theta must be > 0");
    std::uint64_t s = detail::sm_mix(master_seed ^ 0x5851F42D4C957F2Dull);
    s = detail::sm_mix(s ^ (trial * 0x9E3779B97F4A7C15ull));
    s = detail::sm_mix(s ^ (role * 0xD1342543DE82EF95ull));
    return -theta * std::log(detail::to_unit_interval(s));
}

// All squared gains of one trial. Deterministic in (cfg, trial, master_seed).
inline ChannelRealization sample_channels(const SystemConfig& cfg, std::uint64_t trial,
                                          std::uint64_t master_seed) {
    validate(cfg);
    ChannelRealization ch;
    ch.g_n = exp_gain(master_seed, trial, kRoleGn, cfg.theta.g_n);
    ch.g_f = exp_gain(master_seed, trial, kRoleGf, cfg.theta.g_f);
    ch.g_b = exp_gain(master_seed, trial, kRoleGb, cfg.theta.g_b);
    ch.h_n = exp_gain(master_seed, trial, kRoleHn, cfg.theta.h_n);
    ch.h_f = exp_gain(master_seed, trial, kRoleHf, cfg.theta.h_f);
    ch.ed_links.resize(static_cast<std::size_t>(cfg.k_eds));
    for (int k = 0; k < cfg.k_eds; ++k) {
        ch.ed_links[static_cast<std::size_t>(k)] = {
            exp_gain(master_seed, trial, ed_role_g(k), cfg.theta.g_k),
            exp_gain(master_seed, trial, ed_role_h(k), cfg.theta.h_k)};
    }
    return ch;
}

enum class SweepVariable { none, bs_power, ed_count };

struct TrialPlan {
    int n_trials = 10000;
    std::uint64_t master_seed = 1;
    SweepVariable sweep = SweepVariable::none;
    std::vector<double> sweep_values;  // empty iff sweep == none
    std::vector<SchemeKind> schemes = {SchemeKind::noma_optimal, SchemeKind::noma_suboptimal,
                                       SchemeKind::oma_optimal};
    SchemeOptions options{};
};

inline void validate(const TrialPlan& plan) {
    detail::require(plan.n_trials >= 1, "n_trials must be >= 1");
    detail::require(!plan.schemes.empty(), "schemes must not be empty");
    if (plan.sweep == SweepVariable::none) {
        detail::require(plan.sweep_values.empty(), "sweep_values must be empty without a sweep");
        return;
    }
    detail::require(!plan.sweep_values.empty(), "sweep_values must not be empty");
    for (std::size_t i = 0; i < plan.sweep_values.size(); ++i) {
        const double v = plan.sweep_values[i];
        detail::require(v > 0.0, "sweep values must be > 0");
        if (i > 0) {
            detail::require(v > plan.sweep_values[i - 1], "sweep values must be strictly increasing");
        }
        if (plan.sweep == SweepVariable::ed_count) {
            detail::require(v == std::floor(v), "ed_count sweep values must be integers");
        }
    }
}

struct TrialRecord {
    int trial = 0;
    SchemeKind scheme = SchemeKind::noma_optimal;
    double sweep_value = 0.0;
    double alpha = 0.0;
    double omega = 0.0;
    double secrecy = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct TrialAggregate {
    SchemeKind scheme = SchemeKind::noma_optimal;
    double sweep_value = 0.0;
    double mean_secrecy = 0.0;
    double stderr_mean = 0.0;      // sample stdev / sqrt(n); 0 for n = 1
    double mean_iterations = 0.0;
    long n_effective = 0;
    long n_nonconverged = 0;
    long n_errors = 0;  // trials dropped by a solver error, not in any record
};

namespace detail {

// Compensated accumulator, so that aggregate statistics are stable under
// permutation of the records to well below the 1e-12 contract.
class NeumaierSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace detail

// Aggregates the records of one (scheme, sweep point) cell. Two-pass mean
// and sample variance with compensated sums.
inline TrialAggregate summarize(std::span<const TrialRecord> records) {
    detail::require(!records.empty(), "cannot summarize an empty record list");
    TrialAggregate agg;
    agg.scheme = records.front().scheme;
    agg.sweep_value = records.front().sweep_value;
    agg.n_effective = static_cast<long>(records.size());

    detail::NeumaierSum secrecy_sum;
    detail::NeumaierSum iter_sum;
    for (const TrialRecord& r : records) {
        secrecy_sum.add(r.secrecy);
        iter_sum.add(static_cast<double>(r.iterations));
        if (!r.converged) ++agg.n_nonconverged;
    }
    const double n = static_cast<double>(records.size());
    agg.mean_secrecy = secrecy_sum.value() / n;
    agg.mean_iterations = iter_sum.value() / n;

    if (records.size() > 1) {
        detail::NeumaierSum sq_sum;
        for (const TrialRecord& r : records) {
            const double d = r.secrecy - agg.mean_secrecy;
            sq_sum.add(d * d);
        }
        const double sample_var = sq_sum.value() / (n - 1.0);
        agg.stderr_mean = std::sqrt(std::max(0.0, sample_var)) / std::sqrt(n);
    }
    return agg;
}

// Runs every (sweep point, trial, scheme) cell of the plan. All schemes of a
// given (point, trial) observe the identical channel draw. Per-trial records
// are appended to *records when given, ordered by point, then trial, then
// scheme. A solver error skips that trial for that scheme and is counted in
// the cell aggregate.
inline std::vector<TrialAggregate> run_plan(const TrialPlan& plan, const SystemConfig& cfg,
                                            std::vector<TrialRecord>* records = nullptr) {
    validate(cfg);
    validate(plan);

    std::vector<std::pair<SystemConfig, double>> points;
    if (plan.sweep == SweepVariable::none) {
        points.emplace_back(cfg, cfg.p);
    } else {
        for (double v : plan.sweep_values) {
            SystemConfig point_cfg = cfg;
            if (plan.sweep == SweepVariable::bs_power) {
                point_cfg.p = v;
            } else {
                point_cfg.k_eds = static_cast<int>(v);
            }
            validate(point_cfg);
            points.emplace_back(point_cfg, v);
        }
    }

    std::vector<TrialAggregate> aggregates;
    aggregates.reserve(points.size() * plan.schemes.size());

    for (const auto& [point_cfg, sweep_value] : points) {
        std::vector<std::vector<TrialRecord>> per_scheme(plan.schemes.size());
        std::vector<long> errors(plan.schemes.size(), 0);
        for (auto& v : per_scheme) v.reserve(static_cast<std::size_t>(plan.n_trials));

        for (int trial = 0; trial < plan.n_trials; ++trial) {
            const ChannelRealization ch =
                sample_channels(point_cfg, static_cast<std::uint64_t>(trial), plan.master_seed);
            for (std::size_t s = 0; s < plan.schemes.size(); ++s) {
                try {
                    const SolveResult res =
                        run_scheme(plan.schemes[s], ch, point_cfg, plan.options);
                    TrialRecord rec;
                    rec.trial = trial;
                    rec.scheme = plan.schemes[s];
                    rec.sweep_value = sweep_value;
                    rec.alpha = res.controls.alpha;
                    rec.omega = res.controls.omega;
                    rec.secrecy = res.secrecy;
                    rec.iterations = res.iterations;
                    rec.converged = res.converged;
                    per_scheme[s].push_back(rec);
                    if (records) records->push_back(rec);
                } catch (const std::exception&) {
                    ++errors[s];
                }
            }
        }

        for (std::size_t s = 0; s < plan.schemes.size(); ++s) {
            TrialAggregate agg;
            if (!per_scheme[s].empty()) {
                agg = summarize(per_scheme[s]);
            } else {
                agg.scheme = plan.schemes[s];
                agg.sweep_value = sweep_value;
            }
            agg.n_errors = errors[s];
            aggregates.push_back(agg);
        }
    }
    return aggregates;
}

// Per-iteration solver path on seeded instances, averaged pointwise across
// instances. Shorter traces are extended with their final row so every
// iteration index averages over the full instance set.
inline std::vector<TraceRow> convergence_trace(const SystemConfig& cfg,
                                               std::uint64_t master_seed,
                                               int n_instances = 1) {
    validate(cfg);
    detail::require(n_instances >= 1, "n_instances must be >= 1");

    std::vector<std::vector<TraceRow>> traces;
    traces.reserve(static_cast<std::size_t>(n_instances));
    std::size_t max_len = 0;
    for (int i = 0; i < n_instances; ++i) {
        const ChannelRealization ch =
            sample_channels(cfg, static_cast<std::uint64_t>(i), master_seed);
        traces.push_back(solve_dual(ch, cfg).trace);
        max_len = std::max(max_len, traces.back().size());
    }

    std::vector<TraceRow> averaged;
    averaged.reserve(max_len);
    const double n = static_cast<double>(n_instances);
    for (std::size_t t = 0; t < max_len; ++t) {
        TraceRow row;
        row.iter = static_cast<int>(t) + 1;
        for (const auto& trace : traces) {
            const TraceRow& src = t < trace.size() ? trace[t] : trace.back();
            row.alpha += src.alpha;
            row.omega += src.omega;
            row.zeta += src.zeta;
            row.lambda += src.lambda;
            row.objective += src.objective;
        }
        row.alpha /= n;
        row.omega /= n;
        row.zeta /= n;
        row.lambda /= n;
        row.objective /= n;
        averaged.push_back(row);
    }
    return averaged;
}

}  // namespace ambsec
