#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "ambsec/model.hpp"

// Lagrangian dual solver for the secrecy-rate maximization over (alpha,
// omega), plus two independent oracles used to validate it: an exhaustive
// lattice search and the analytic endpoint rule. The objective
// f(alpha) = log2(1+a*alpha) - log2(1+b*alpha) is monotone on [0, 1], so the
// exact optimum of the literal problem sits at an endpoint; the dual method
// is kept faithful to its closed-form primal steps and judged against the
// oracles rather than trusted on its own.
namespace ambsec {

struct DualState {
    double zeta = 1.0;    // multiplier of alpha <= 1
    double lambda = 1.0;  // multiplier of the power-ordering constraint
    int iter = 0;         // completed dual updates
    double step = 0.1;    // step size used by the most recent update
};

struct TraceRow {
    int iter = 0;  // 1-based iteration index
    double alpha = 0.0;
    double omega = 0.0;
    double zeta = 0.0;    // multiplier entering this iteration
    double lambda = 0.0;  // multiplier entering this iteration
    double objective = 0.0;
};

struct SolveResult {
    ControlVariables controls{};
    double secrecy = 0.0;
    int iterations = 0;
    std::vector<TraceRow> trace;
    bool converged = false;
};

// Quadratic coefficients of the stationarity condition in alpha, written for
// the single eavesdropper ed_index. The third coefficient mixes signs and is
// kept exactly as transcribed; the solver treats the resulting roots as
// candidates to screen, not as trusted optima.
struct PiCoefficients {
    double pi1 = 0.0;
    double pi2 = 0.0;
    double pi3 = 0.0;
};

inline PiCoefficients pi_coefficients(const ChannelRealization& ch, const SystemConfig& cfg,
                                      std::size_t ed_index) {
    if (ed_index >= ch.ed_links.size()) {
        throw std::domain_error("eavesdropper index out of range");
    }
    const double gb = ch.g_b;
    const double hn = ch.h_n;
    const double hk = ch.ed_links[ed_index].h_k;
    const double p = cfg.p;
    const double s2 = cfg.sigma2;
    PiCoefficients pi;
    pi.pi1 = gb * gb * p * p * hn * hk;
    pi.pi2 = gb * gb * p * p * hn + hn * gb * p * s2 + hk * gb * p * s2;
    pi.pi3 = hk * gb * s2 - hn * gb * gb * p - hn * gb * s2;
    return pi;
}

namespace detail {

// Endpoint maximizer of f(alpha) over {0, 1}; ties resolve to 0.
inline double endpoint_alpha(double a, double b) {
    return secrecy_objective(a, b, 1.0) > 0.0 ? 1.0 : 0.0;
}

}  // namespace detail

// One KKT primal step in alpha for fixed multipliers. Evaluates both roots of
// the stationarity quadratic, keeps a root only if it is real, lies in [0, 1]
// and improves the Lagrangian over the endpoint fallback, and otherwise
// returns that fallback. zeta <= 0 removes the 1/zeta term from the
// quadratic, so the step is signalled as unconstrained (nullopt) and the
// caller falls back to the endpoint rule.
inline std::optional<double> closed_form_alpha(const ChannelRealization& ch,
                                               const SystemConfig& cfg,
                                               const DualState& dual) {
    if (dual.zeta <= 0.0) return std::nullopt;

    const double a = legit_backscatter_gain(ch, cfg);
    const double b = best_ed_backscatter_gain(ch, cfg);
    const double fallback = detail::endpoint_alpha(a, b);
    double alpha = fallback;

    const PiCoefficients pi = pi_coefficients(ch, cfg, strongest_ed(ch, cfg));
    if (pi.pi1 > 0.0) {
        const double c = ch.g_b * cfg.p * cfg.sigma2 + cfg.p * pi.pi3 / dual.zeta;
        const double disc = pi.pi2 * pi.pi2 - 4.0 * pi.pi1 * c;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            // Lagrangian value (alpha-dependent part) to beat; never worse
            // than alpha = 0, which contributes zero.
            double best = std::max(0.0, secrecy_objective(a, b, fallback) - dual.zeta * fallback);
            for (double root : {(-pi.pi2 - sq) / (2.0 * pi.pi1), (-pi.pi2 + sq) / (2.0 * pi.pi1)}) {
                if (root < 0.0 || root > 1.0) continue;
                const double lag = secrecy_objective(a, b, root) - dual.zeta * root;
                if (lag > best) {
                    best = lag;
                    alpha = root;
                }
            }
        }
    }
    return alpha;
}

// One primal step in omega for fixed multipliers, transcribed literally. The
// objective itself is omega-invariant, so this value is diagnostic only; it
// is clamped into the feasible half-open interval. lambda <= 0 is signalled
// as degenerate (nullopt) and the caller pins omega at 0.5.
inline std::optional<double> closed_form_omega(const ChannelRealization& ch,
                                               const SystemConfig& cfg, double alpha,
                                               const DualState& dual) {
    if (dual.lambda <= 0.0) return std::nullopt;
    const std::size_t k = strongest_ed(ch, cfg);
    const EdLink& e = ch.ed_links[k];
    const double raw = (e.h_k + 1.0) * ch.h_n * alpha * alpha * ch.g_b * ch.g_b *
                       cfg.p * cfg.p * cfg.p * e.h_k * e.g_k / (dual.lambda * cfg.p);
    return std::clamp(raw, kOmegaFloor, 0.5);
}

// Projected subgradient step on both multipliers with the diminishing
// schedule step0 / sqrt(j), j counting updates from 1.
inline DualState dual_update(const DualState& dual, double alpha, double omega,
                             const SystemConfig& cfg) {
    DualState next = dual;
    next.iter = dual.iter + 1;
    next.step = cfg.step0 / std::sqrt(static_cast<double>(next.iter));
    next.zeta = std::max(0.0, dual.zeta + next.step * (alpha - 1.0));
    next.lambda = std::max(0.0, dual.lambda + next.step * (cfg.p * omega - cfg.p * (1.0 - omega)));
    return next;
}

namespace detail {

// Shared dual-ascent loop. fixed_omega, when set, freezes the power split
// and the lambda branch, leaving a 1-D search over alpha.
inline SolveResult run_dual_loop(const ChannelRealization& ch, const SystemConfig& cfg,
                                 std::optional<double> fixed_omega) {
    validate(cfg);
    validate(ch);

    const double a = legit_backscatter_gain(ch, cfg);
    const double b = best_ed_backscatter_gain(ch, cfg);

    DualState state;
    state.step = cfg.step0;

    SolveResult result;
    result.trace.reserve(16);

    double best_obj = -std::numeric_limits<double>::infinity();
    double prev_obj = std::numeric_limits<double>::quiet_NaN();
    int consecutive_small = 0;

    for (int j = 1; j <= cfg.max_iters; ++j) {
        const std::optional<double> alpha_step = closed_form_alpha(ch, cfg, state);
        const double alpha = alpha_step ? *alpha_step : endpoint_alpha(a, b);

        double omega = 0.5;
        if (fixed_omega) {
            omega = *fixed_omega;
        } else if (const std::optional<double> omega_step =
                       closed_form_omega(ch, cfg, alpha, state)) {
            omega = *omega_step;
        }

        const double obj = std::max(0.0, secrecy_objective(a, b, alpha));
        result.trace.push_back({j, alpha, omega, state.zeta, state.lambda, obj});

        if (obj > best_obj) {
            best_obj = obj;
            result.controls = ControlVariables{alpha, omega};
        }

        if (!std::isnan(prev_obj) && std::fabs(obj - prev_obj) < cfg.tol) {
            ++consecutive_small;
        } else {
            consecutive_small = 0;
        }
        prev_obj = obj;

        const double resid_alpha = std::max(alpha - 1.0, 0.0);
        const double resid_power = std::max(cfg.p * omega - cfg.p * (1.0 - omega), 0.0);
        if (consecutive_small >= 3 && resid_alpha < 1e-6 && resid_power < 1e-6) {
            result.converged = true;
            result.iterations = j;
            break;
        }

        const double lambda_before = state.lambda;
        state = dual_update(state, alpha, omega, cfg);
        if (fixed_omega) state.lambda = lambda_before;
    }

    if (!result.converged) result.iterations = cfg.max_iters;
    result.secrecy = secrecy_rate(ch, cfg, result.controls);
    return result;
}

}  // namespace detail

// Full dual method over (alpha, omega). Converges when the objective change
// stays below cfg.tol for three consecutive iterations and the constraint
// residuals are below 1e-6; otherwise returns the best iterate seen with
// converged = false.
inline SolveResult solve_dual(const ChannelRealization& ch, const SystemConfig& cfg) {
    return detail::run_dual_loop(ch, cfg, std::nullopt);
}

// Exhaustive lattice search over alpha in [0, 1] and omega in
// [kOmegaFloor, 0.5], n_alpha x n_omega points including both ends. Argmax
// with first-hit tie-breaking: smallest alpha, then smallest omega.
inline SolveResult grid_oracle(const ChannelRealization& ch, const SystemConfig& cfg,
                               int n_alpha = 201, int n_omega = 201) {
    validate(cfg);
    validate(ch);
    detail::require(n_alpha >= 2, "n_alpha must be >= 2");
    detail::require(n_omega >= 2, "n_omega must be >= 2");

    SolveResult result;
    result.secrecy = -1.0;
    for (int i = 0; i < n_alpha; ++i) {
        const double alpha = static_cast<double>(i) / static_cast<double>(n_alpha - 1);
        for (int j = 0; j < n_omega; ++j) {
            const double omega = kOmegaFloor + static_cast<double>(j) *
                                                   (0.5 - kOmegaFloor) /
                                                   static_cast<double>(n_omega - 1);
            const double value = secrecy_rate(ch, cfg, ControlVariables{alpha, omega});
            if (value > result.secrecy) {
                result.secrecy = value;
                result.controls = ControlVariables{alpha, omega};
            }
        }
    }
    result.iterations = 0;
    result.converged = true;
    return result;
}

// Exact optimum of the literal objective: f is monotone on [0, 1], so the
// maximizer is alpha = 1 when the legitimate gain beats the strongest
// eavesdropper and alpha = 0 otherwise. omega is reported at 0.5.
inline SolveResult endpoint_oracle(const ChannelRealization& ch, const SystemConfig& cfg) {
    validate(cfg);
    validate(ch);
    const double a = legit_backscatter_gain(ch, cfg);
    const double b = best_ed_backscatter_gain(ch, cfg);
    SolveResult result;
    if (a > b) {
        result.controls = ControlVariables{1.0, 0.5};
        result.secrecy = std::log2(1.0 + a) - std::log2(1.0 + b);
    } else {
        result.controls = ControlVariables{0.0, 0.5};
        result.secrecy = 0.0;
    }
    result.iterations = 0;
    result.converged = true;
    return result;
}

}  // namespace ambsec
