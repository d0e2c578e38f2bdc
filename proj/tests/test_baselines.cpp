#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ambsec/ambsec.hpp"

using namespace ambsec;
using Catch::Matchers::WithinRel;

namespace {

SystemConfig default_cfg(int k_eds = 5) {
    SystemConfig cfg;
    cfg.k_eds = k_eds;
    return cfg;
}

ChannelRealization a10_b1_channel() {
    ChannelRealization ch;
    ch.g_n = 1.0;
    ch.g_f = 0.3;
    ch.g_b = 1.0;
    ch.h_n = 1.0;
    ch.h_f = 0.4;
    ch.ed_links = {{0.1, 0.2}};
    return ch;
}

}  // namespace

TEST_CASE("scheme tags round-trip") {
    CHECK(to_string(SchemeKind::noma_optimal) == "noma_optimal");
    CHECK(to_string(SchemeKind::noma_suboptimal) == "noma_suboptimal");
    CHECK(to_string(SchemeKind::oma_optimal) == "oma_optimal");

    CHECK(scheme_from_string("noma_optimal") == SchemeKind::noma_optimal);
    CHECK(scheme_from_string("noma-opt") == SchemeKind::noma_optimal);
    CHECK(scheme_from_string("noma-subopt") == SchemeKind::noma_suboptimal);
    CHECK(scheme_from_string("oma") == SchemeKind::oma_optimal);
    CHECK_FALSE(scheme_from_string("tdma").has_value());

    CHECK(oma_mode_from_string("cancel") == OmaInterferenceMode::cancel);
    CHECK(oma_mode_from_string("noise") == OmaInterferenceMode::noise);
    CHECK_FALSE(oma_mode_from_string("ignore").has_value());
}

TEST_CASE("fixed power split solve") {
    const SystemConfig cfg = default_cfg(1);
    const ChannelRealization ch = a10_b1_channel();

    SECTION("rejects an infeasible split") {
        CHECK_THROWS_AS(solve_suboptimal_noma(ch, cfg, 0.0), std::domain_error);
        CHECK_THROWS_AS(solve_suboptimal_noma(ch, cfg, 0.7), std::domain_error);
        CHECK_THROWS_AS(solve_suboptimal_noma(ch, cfg, -0.25), std::domain_error);
    }

    SECTION("accepts the boundary split") {
        const SolveResult res = solve_suboptimal_noma(ch, cfg, 0.5);
        CHECK(res.controls.omega == 0.5);
    }

    SECTION("reports the fixed split") {
        const SolveResult res = solve_suboptimal_noma(ch, cfg, 0.25);
        CHECK(res.controls.omega == 0.25);
    }

    SECTION("dead legitimate link") {
        ChannelRealization dead = ch;
        dead.h_n = 0.0;
        CHECK(solve_suboptimal_noma(dead, cfg, 0.25).secrecy == 0.0);
    }

    SECTION("alpha path identical to the full dual solve") {
        // omega never feeds back into the alpha or zeta updates, so fixing
        // it cannot change the achieved secrecy.
        const SystemConfig cfg5 = default_cfg(5);
        for (int i = 0; i < 200; ++i) {
            const ChannelRealization draw = sample_channels(cfg5, i, 17);
            const SolveResult full = solve_dual(draw, cfg5);
            const SolveResult fixed = solve_suboptimal_noma(draw, cfg5, 0.25);
            CHECK(fixed.secrecy == full.secrecy);
            CHECK(fixed.controls.alpha == full.controls.alpha);
            CHECK(fixed.iterations == full.iterations);
        }
    }

    SECTION("tracks the endpoint optimum within solver tolerance") {
        const SystemConfig cfg5 = default_cfg(5);
        for (int i = 0; i < 200; ++i) {
            const ChannelRealization draw = sample_channels(cfg5, i, 18);
            const SolveResult fixed = solve_suboptimal_noma(draw, cfg5, 0.25);
            const SolveResult endpoint = endpoint_oracle(draw, cfg5);
            CHECK(std::fabs(fixed.secrecy - endpoint.secrecy) <= 1e-3);
        }
    }
}

TEST_CASE("two-slot OMA solve") {
    const SystemConfig cfg = default_cfg(1);
    const ChannelRealization ch = a10_b1_channel();

    SECTION("a = 10, b = 1 instance") {
        const SolveResult res = solve_oma(ch, cfg);
        CHECK(res.controls.alpha == 1.0);
        CHECK_THAT(res.secrecy, WithinRel(1.2297158093186487, 1e-15));
        CHECK(res.converged);
    }

    SECTION("dominated link keeps the reflector off") {
        ChannelRealization dead = ch;
        dead.h_n = 0.01;
        dead.ed_links = {{0.0, 1.0}};
        const SolveResult res = solve_oma(dead, cfg);
        CHECK(res.controls.alpha == 0.0);
        CHECK(res.secrecy == 0.0);
    }

    SECTION("exactly half the endpoint optimum on matched channels") {
        const SystemConfig cfg5 = default_cfg(5);
        for (int i = 0; i < 1000; ++i) {
            const ChannelRealization draw = sample_channels(cfg5, i, 19);
            const SolveResult oma = solve_oma(draw, cfg5);
            const SolveResult endpoint = endpoint_oracle(draw, cfg5);
            if (endpoint.secrecy == 0.0) {
                CHECK(oma.secrecy == 0.0);
            } else {
                CHECK_THAT(oma.secrecy, WithinRel(0.5 * endpoint.secrecy, 1e-12));
            }
        }
    }

    SECTION("treating the direct signal as noise never helps") {
        const SystemConfig cfg5 = default_cfg(5);
        for (int i = 0; i < 200; ++i) {
            const ChannelRealization draw = sample_channels(cfg5, i, 20);
            const double with_sic = solve_oma(draw, cfg5, OmaInterferenceMode::cancel).secrecy;
            const double as_noise = solve_oma(draw, cfg5, OmaInterferenceMode::noise).secrecy;
            CHECK(as_noise <= with_sic);
        }
    }
}

TEST_CASE("scheme dispatch is the identity") {
    const SystemConfig cfg = default_cfg(3);
    const ChannelRealization ch = sample_channels(cfg, 5, 21);

    const SolveResult direct_full = solve_dual(ch, cfg);
    const SolveResult via_dispatch = run_scheme(SchemeKind::noma_optimal, ch, cfg);
    CHECK(via_dispatch.secrecy == direct_full.secrecy);
    CHECK(via_dispatch.controls.alpha == direct_full.controls.alpha);
    CHECK(via_dispatch.controls.omega == direct_full.controls.omega);
    CHECK(via_dispatch.iterations == direct_full.iterations);
    CHECK(via_dispatch.converged == direct_full.converged);
    CHECK(via_dispatch.trace.size() == direct_full.trace.size());

    const SolveResult direct_fixed = solve_suboptimal_noma(ch, cfg, 0.25);
    const SolveResult via_fixed = run_scheme(SchemeKind::noma_suboptimal, ch, cfg);
    CHECK(via_fixed.secrecy == direct_fixed.secrecy);
    CHECK(via_fixed.controls.omega == 0.25);

    const SolveResult direct_oma = solve_oma(ch, cfg);
    const SolveResult via_oma = run_scheme(SchemeKind::oma_optimal, ch, cfg);
    CHECK(via_oma.secrecy == direct_oma.secrecy);
    CHECK(via_oma.controls.alpha == direct_oma.controls.alpha);
}

TEST_CASE("scheme ordering on matched instances") {
    const SystemConfig cfg = default_cfg(5);

    for (int i = 0; i < 200; ++i) {
        const ChannelRealization ch = sample_channels(cfg, i, 23);
        const double opt = run_scheme(SchemeKind::noma_optimal, ch, cfg).secrecy;
        const double sub = run_scheme(SchemeKind::noma_suboptimal, ch, cfg).secrecy;
        const double oma = run_scheme(SchemeKind::oma_optimal, ch, cfg).secrecy;

        CHECK(opt == sub);
        CHECK(sub >= 0.0);
        CHECK(opt >= oma);
    }
}
