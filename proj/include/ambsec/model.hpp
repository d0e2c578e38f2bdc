#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

// Core signal model for a downlink NOMA network with an ambient backscatter
// node (BN) and passive eavesdroppers. A base station serves a near user U_n
// and a far user U_f with superposition coding; the BN reflects a fraction
// alpha of the incident signal toward U_n. All quantities are squared channel
// gains (linear power gains), so Rayleigh fading reduces to exponential gain
// statistics and no complex phase is stored.
namespace ambsec {

// Numerical floor applied to solver-produced omega iterates. User-supplied
// evaluations only need omega > 0.
inline constexpr double kOmegaFloor = 1e-9;

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw std::domain_error(what);
}

}  // namespace detail

// Per-link Rayleigh gain variances. One entry per link role.
struct ThetaMap {
    double g_n = 0.1;  // BS -> U_n
    double g_f = 0.1;  // BS -> U_f
    double g_b = 0.1;  // BS -> BN
    double h_n = 0.1;  // BN -> U_n
    double h_f = 0.1;  // BN -> U_f
    double g_k = 0.1;  // BS -> eavesdropper
    double h_k = 0.1;  // BN -> eavesdropper
};

struct SystemConfig {
    double p = 10.0;       // total BS transmit power, watts
    double sigma2 = 1.0;   // AWGN variance, watts
    ThetaMap theta{};      // channel variances per link role
    int k_eds = 10;        // eavesdropper count
    double tol = 1e-6;     // solver convergence precision
    int max_iters = 2000;  // solver iteration cap
    double step0 = 0.1;    // initial subgradient step size
};

inline void validate(const SystemConfig& cfg) {
    detail::require(cfg.p > 0.0, "p must be > 0");
    detail::require(cfg.sigma2 > 0.0, "sigma2 must be > 0");
    detail::require(cfg.k_eds >= 1, "k_eds must be >= 1");
    detail::require(cfg.tol > 0.0, "tol must be > 0");
    detail::require(cfg.max_iters >= 1, "max_iters must be >= 1");
    detail::require(cfg.step0 > 0.0, "step0 must be > 0");
    for (double t : {cfg.theta.g_n, cfg.theta.g_f, cfg.theta.g_b, cfg.theta.h_n,
                     cfg.theta.h_f, cfg.theta.g_k, cfg.theta.h_k}) {
        detail::require(t > 0.0, "theta entries must be > 0");
    }
}

// Squared gains of one eavesdropper: BS -> E_k and BN -> E_k.
struct EdLink {
    double g_k = 0.0;
    double h_k = 0.0;
};

// One draw of all squared channel gains.
struct ChannelRealization {
    double g_n = 0.0;  // BS -> U_n
    double g_f = 0.0;  // BS -> U_f
    double g_b = 0.0;  // BS -> BN
    double h_n = 0.0;  // BN -> U_n
    double h_f = 0.0;  // BN -> U_f
    std::vector<EdLink> ed_links;
};

inline void validate(const ChannelRealization& ch) {
    detail::require(ch.g_n >= 0.0 && ch.g_f >= 0.0 && ch.g_b >= 0.0 &&
                        ch.h_n >= 0.0 && ch.h_f >= 0.0,
                    "channel gains must be >= 0");
    detail::require(!ch.ed_links.empty(), "ed_links must hold at least one eavesdropper");
    for (const EdLink& e : ch.ed_links) {
        detail::require(e.g_k >= 0.0 && e.h_k >= 0.0, "eavesdropper gains must be >= 0");
    }
}

// The decision pair: BN reflection coefficient and NOMA power split.
struct ControlVariables {
    double alpha = 0.0;  // in [0, 1]
    double omega = 0.5;  // in (0, 0.5]; the far user gets the larger share
};

inline void validate(const ControlVariables& cv) {
    detail::require(cv.alpha >= 0.0 && cv.alpha <= 1.0, "alpha must be in [0, 1]");
    detail::require(cv.omega > 0.0 && cv.omega <= 0.5, "omega must be in (0, 0.5]");
}

// All SINRs plus the rate terms of the secrecy objective, for diagnostics.
struct RateReport {
    double sinr_n_f = 0.0;      // U_n decoding the far-user signal
    double sinr_n_n = 0.0;      // U_n decoding its own signal
    double sinr_n_b = 0.0;      // U_n decoding the BN signal
    double sinr_f_f = 0.0;      // U_f decoding its own signal
    double sinr_k_b_max = 0.0;  // strongest eavesdropper on the BN signal
    double rate_n_b = 0.0;      // bits/s/Hz
    double rate_ed_best = 0.0;  // bits/s/Hz
    double secrecy = 0.0;       // bits/s/Hz, clamped at zero
};

// SINR at U_n for the far-user signal, decoded first under SIC. The
// backscatter path re-radiates the full superimposed power p.
inline double sinr_near_decodes_far(const ChannelRealization& ch, const SystemConfig& cfg,
                                    const ControlVariables& cv) {
    validate(cv);
    const double interference =
        ch.g_n * cfg.p * cv.omega + ch.h_n * cv.alpha * ch.g_b * cfg.p + cfg.sigma2;
    return ch.g_n * cfg.p * (1.0 - cv.omega) / interference;
}

// SINR at U_n for its own signal, after the far-user signal is cancelled.
inline double sinr_near_own(const ChannelRealization& ch, const SystemConfig& cfg,
                            const ControlVariables& cv) {
    validate(cv);
    return ch.g_n * cfg.p * cv.omega /
           (ch.h_n * cv.alpha * ch.g_b * cfg.p + cfg.sigma2);
}

// SINR at U_n for the BN signal, decoded last. Independent of omega: the
// reflected power is alpha * |G_b|^2 * p regardless of the power split.
inline double sinr_near_backscatter(const ChannelRealization& ch, const SystemConfig& cfg,
                                    const ControlVariables& cv) {
    validate(cv);
    return ch.h_n * cv.alpha * ch.g_b * cfg.p / cfg.sigma2;
}

// SINR at U_f, which decodes without SIC and treats the near-user share and
// the backscatter path as interference.
inline double sinr_far_own(const ChannelRealization& ch, const SystemConfig& cfg,
                           const ControlVariables& cv) {
    validate(cv);
    const double interference =
        ch.g_f * cfg.p * cv.omega + ch.h_f * cv.alpha * ch.g_b * cfg.p + cfg.sigma2;
    return ch.g_f * cfg.p * (1.0 - cv.omega) / interference;
}

// SINR at eavesdropper ed_index for the BN signal; the direct BS signal acts
// as interference. Also omega-independent.
inline double sinr_ed_backscatter(std::size_t ed_index, const ChannelRealization& ch,
                                  const SystemConfig& cfg, const ControlVariables& cv) {
    validate(cv);
    if (ed_index >= ch.ed_links.size()) {
        throw std::domain_error("eavesdropper index out of range");
    }
    const EdLink& e = ch.ed_links[ed_index];
    return e.h_k * cv.alpha * ch.g_b * cfg.p / (e.g_k * cfg.p + cfg.sigma2);
}

// Effective backscatter gain of the legitimate link: sinr_near_backscatter
// per unit alpha.
inline double legit_backscatter_gain(const ChannelRealization& ch, const SystemConfig& cfg) {
    return ch.h_n * ch.g_b * cfg.p / cfg.sigma2;
}

// Effective backscatter gain of eavesdropper k per unit alpha.
inline double ed_backscatter_gain(std::size_t ed_index, const ChannelRealization& ch,
                                  const SystemConfig& cfg) {
    if (ed_index >= ch.ed_links.size()) {
        throw std::domain_error("eavesdropper index out of range");
    }
    const EdLink& e = ch.ed_links[ed_index];
    return e.h_k * ch.g_b * cfg.p / (e.g_k * cfg.p + cfg.sigma2);
}

// Index of the strongest (worst-case) eavesdropper. The ranking does not
// depend on alpha, so it is a property of the channel draw alone. First index
// wins ties.
inline std::size_t strongest_ed(const ChannelRealization& ch, const SystemConfig& cfg) {
    detail::require(!ch.ed_links.empty(), "ed_links must hold at least one eavesdropper");
    std::size_t best = 0;
    double best_gain = ed_backscatter_gain(0, ch, cfg);
    for (std::size_t k = 1; k < ch.ed_links.size(); ++k) {
        const double gain = ed_backscatter_gain(k, ch, cfg);
        if (gain > best_gain) {
            best_gain = gain;
            best = k;
        }
    }
    return best;
}

// Gain of the strongest eavesdropper.
inline double best_ed_backscatter_gain(const ChannelRealization& ch, const SystemConfig& cfg) {
    return ed_backscatter_gain(strongest_ed(ch, cfg), ch, cfg);
}

// The secrecy objective as a function of alpha alone:
//   f(alpha) = log2(1 + a*alpha) - log2(1 + b*alpha),
// where a is the legitimate backscatter gain and b the strongest
// eavesdropper gain. Unclamped; may be negative.
inline double secrecy_objective(double a, double b, double alpha) {
    return std::log2(1.0 + a * alpha) - std::log2(1.0 + b * alpha);
}

// Analytic derivative of secrecy_objective with respect to alpha.
inline double secrecy_objective_dalpha(double a, double b, double alpha) {
    constexpr double ln2 = 0.6931471805599453;
    return (a / (1.0 + a * alpha) - b / (1.0 + b * alpha)) / ln2;
}

// Secrecy rate of the BN message at U_n against the strongest of the
// non-colluding eavesdroppers, clamped at zero.
inline double secrecy_rate(const ChannelRealization& ch, const SystemConfig& cfg,
                           const ControlVariables& cv) {
    validate(cv);
    detail::require(!ch.ed_links.empty(), "ed_links must hold at least one eavesdropper");
    const double gamma_nb = sinr_near_backscatter(ch, cfg, cv);
    double gamma_ed = 0.0;
    for (std::size_t k = 0; k < ch.ed_links.size(); ++k) {
        gamma_ed = std::max(gamma_ed, sinr_ed_backscatter(k, ch, cfg, cv));
    }
    const double rate = std::log2(1.0 + gamma_nb) - std::log2(1.0 + gamma_ed);
    return std::max(0.0, rate);
}

// Evaluates every SINR and the secrecy rate in one pass. Fields match the
// individual operations exactly.
inline RateReport rate_report(const ChannelRealization& ch, const SystemConfig& cfg,
                              const ControlVariables& cv) {
    validate(cv);
    detail::require(!ch.ed_links.empty(), "ed_links must hold at least one eavesdropper");
    RateReport r;
    r.sinr_n_f = sinr_near_decodes_far(ch, cfg, cv);
    r.sinr_n_n = sinr_near_own(ch, cfg, cv);
    r.sinr_n_b = sinr_near_backscatter(ch, cfg, cv);
    r.sinr_f_f = sinr_far_own(ch, cfg, cv);
    r.sinr_k_b_max = 0.0;
    for (std::size_t k = 0; k < ch.ed_links.size(); ++k) {
        r.sinr_k_b_max = std::max(r.sinr_k_b_max, sinr_ed_backscatter(k, ch, cfg, cv));
    }
    r.rate_n_b = std::log2(1.0 + r.sinr_n_b);
    r.rate_ed_best = std::log2(1.0 + r.sinr_k_b_max);
    r.secrecy = std::max(0.0, r.rate_n_b - r.rate_ed_best);
    return r;
}

}  // namespace ambsec
