#pragma once

#include <cmath>
#include <optional>
#include <string_view>

#include "ambsec/solver.hpp"

// Comparison schemes: the full dual method, the fixed-power-split variant,
// and a two-slot OMA design where the BN only reflects while the far user is
// served. Matched channel instances across schemes are the caller's job (see
// the Monte Carlo module).
namespace ambsec {

enum class SchemeKind { noma_optimal, noma_suboptimal, oma_optimal };

constexpr std::string_view to_string(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::noma_optimal: return "noma_optimal";
        case SchemeKind::noma_suboptimal: return "noma_suboptimal";
        case SchemeKind::oma_optimal: return "oma_optimal";
    }
    return "unknown";
}

// Accepts both the canonical tags and the short CLI spellings.
inline std::optional<SchemeKind> scheme_from_string(std::string_view s) {
    if (s == "noma_optimal" || s == "noma-opt") return SchemeKind::noma_optimal;
    if (s == "noma_suboptimal" || s == "noma-subopt") return SchemeKind::noma_suboptimal;
    if (s == "oma_optimal" || s == "oma") return SchemeKind::oma_optimal;
    return std::nullopt;
}

// Whether the near user cancels the direct BS signal before decoding the BN
// message in the OMA slot, or treats it as noise.
enum class OmaInterferenceMode { cancel, noise };

constexpr std::string_view to_string(OmaInterferenceMode mode) {
    return mode == OmaInterferenceMode::cancel ? "cancel" : "noise";
}

inline std::optional<OmaInterferenceMode> oma_mode_from_string(std::string_view s) {
    if (s == "cancel") return OmaInterferenceMode::cancel;
    if (s == "noise") return OmaInterferenceMode::noise;
    return std::nullopt;
}

struct SchemeOptions {
    double fixed_omega = 0.25;
    OmaInterferenceMode oma_mode = OmaInterferenceMode::cancel;
};

// Dual method with the power split pinned at fixed_omega; only alpha is
// optimized (the lambda branch of the update is frozen).
inline SolveResult solve_suboptimal_noma(const ChannelRealization& ch, const SystemConfig& cfg,
                                         double fixed_omega = 0.25) {
    detail::require(fixed_omega > 0.0 && fixed_omega <= 0.5,
                    "fixed_omega must be in (0, 0.5]");
    return detail::run_dual_loop(ch, cfg, fixed_omega);
}

// Two equal time slots at full power p. The BN reflects only in the far-user
// slot; U_n either cancels the direct BS signal before decoding the BN
// message (mirroring its SIC role) or treats it as noise. The halved pre-log
// factor applies to the secrecy rate. alpha is set by the endpoint rule.
inline SolveResult solve_oma(const ChannelRealization& ch, const SystemConfig& cfg,
                             OmaInterferenceMode mode = OmaInterferenceMode::cancel) {
    validate(cfg);
    validate(ch);
    const double a_eff = mode == OmaInterferenceMode::cancel
                             ? legit_backscatter_gain(ch, cfg)
                             : ch.h_n * ch.g_b * cfg.p / (ch.g_n * cfg.p + cfg.sigma2);
    const double b = best_ed_backscatter_gain(ch, cfg);
    SolveResult result;
    result.iterations = 0;
    result.converged = true;
    if (a_eff > b) {
        result.controls = ControlVariables{1.0, 0.5};
        result.secrecy = 0.5 * (std::log2(1.0 + a_eff) - std::log2(1.0 + b));
    } else {
        result.controls = ControlVariables{0.0, 0.5};
        result.secrecy = 0.0;
    }
    return result;
}

inline SolveResult run_scheme(SchemeKind kind, const ChannelRealization& ch,
                              const SystemConfig& cfg, const SchemeOptions& options = {}) {
    switch (kind) {
        case SchemeKind::noma_suboptimal:
            return solve_suboptimal_noma(ch, cfg, options.fixed_omega);
        case SchemeKind::oma_optimal:
            return solve_oma(ch, cfg, options.oma_mode);
        case SchemeKind::noma_optimal:
        default:
            return solve_dual(ch, cfg);
    }
}

}  // namespace ambsec
