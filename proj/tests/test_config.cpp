#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "ambsec/ambsec.hpp"

using namespace ambsec;
using nlohmann::json;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    const std::filesystem::path p = std::filesystem::temp_directory_path() / name;
    std::ofstream f(p);
    f << content;
    return p;
}

}  // namespace

TEST_CASE("full configuration document") {
    const json j = json::parse(R"({
        "p": 12.5,
        "sigma2": 0.5,
        "theta": {"gn": 0.2, "gf": 0.3, "gb": 0.4, "hn": 0.5, "hf": 0.6, "gk": 0.7, "hk": 0.8},
        "k_eds": 7,
        "tol": 1e-7,
        "max_iters": 500,
        "step0": 0.05,
        "n_trials": 123,
        "master_seed": 99,
        "fixed_omega": 0.3,
        "oma_interference_mode": "noise"
    })");

    AppConfig app;
    apply_json_config(app, j);

    CHECK(app.sys.p == 12.5);
    CHECK(app.sys.sigma2 == 0.5);
    CHECK(app.sys.theta.g_n == 0.2);
    CHECK(app.sys.theta.g_f == 0.3);
    CHECK(app.sys.theta.g_b == 0.4);
    CHECK(app.sys.theta.h_n == 0.5);
    CHECK(app.sys.theta.h_f == 0.6);
    CHECK(app.sys.theta.g_k == 0.7);
    CHECK(app.sys.theta.h_k == 0.8);
    CHECK(app.sys.k_eds == 7);
    CHECK(app.sys.tol == 1e-7);
    CHECK(app.sys.max_iters == 500);
    CHECK(app.sys.step0 == 0.05);
    CHECK(app.n_trials == 123);
    CHECK(app.master_seed == 99);
    CHECK(app.fixed_omega == 0.3);
    CHECK(app.oma_mode == OmaInterferenceMode::noise);
    CHECK_NOTHROW(validate(app));
}

TEST_CASE("partial theta overrides keep the other defaults") {
    AppConfig app;
    apply_json_config(app, json::parse(R"({"theta": {"gb": 0.9}})"));
    CHECK(app.sys.theta.g_b == 0.9);
    CHECK(app.sys.theta.g_n == 0.1);
    CHECK(app.sys.theta.h_k == 0.1);
}

TEST_CASE("unknown keys are rejected by name") {
    AppConfig app;

    try {
        apply_json_config(app, json::parse(R"({"powr": 3})"));
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("powr") != std::string::npos);
    }

    try {
        apply_json_config(app, json::parse(R"({"theta": {"gx": 3}})"));
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("theta.gx") != std::string::npos);
    }
}

TEST_CASE("type errors are rejected") {
    AppConfig app;
    CHECK_THROWS_AS(apply_json_config(app, json::parse(R"({"p": "ten"})")), ConfigError);
    CHECK_THROWS_AS(apply_json_config(app, json::parse(R"({"k_eds": 2.5})")), ConfigError);
    CHECK_THROWS_AS(apply_json_config(app, json::parse(R"({"master_seed": -1})")), ConfigError);
    CHECK_THROWS_AS(apply_json_config(app, json::parse(R"({"theta": 0.1})")), ConfigError);
    CHECK_THROWS_AS(apply_json_config(app, json::parse(R"({"oma_interference_mode": 3})")),
                    ConfigError);
    CHECK_THROWS_AS(apply_json_config(app, json::parse(R"({"oma_interference_mode": "drop"})")),
                    ConfigError);
    CHECK_THROWS_AS(apply_json_config(app, json::parse(R"([1, 2])")), ConfigError);
}

TEST_CASE("range validation happens after assembly") {
    AppConfig app;
    apply_json_config(app, json::parse(R"({"k_eds": 0})"));
    CHECK_THROWS_AS(validate(app), std::domain_error);

    app = AppConfig{};
    apply_json_config(app, json::parse(R"({"fixed_omega": 0.7})"));
    CHECK_THROWS_AS(validate(app), std::domain_error);

    app = AppConfig{};
    apply_json_config(app, json::parse(R"({"n_trials": 0})"));
    CHECK_THROWS_AS(validate(app), std::domain_error);
}

TEST_CASE("configuration files") {
    SECTION("overlay order: defaults, then file") {
        const auto path = temp_file("ambsec_cfg_ok.json", R"({"p": 7.0})");
        AppConfig base;
        base.sys.p = 5.0;
        base.sys.k_eds = 3;
        const AppConfig merged = load_app_config(path.string(), base);
        CHECK(merged.sys.p == 7.0);
        CHECK(merged.sys.k_eds == 3);
        std::filesystem::remove(path);
    }

    SECTION("empty document changes nothing") {
        const auto path = temp_file("ambsec_cfg_empty.json", "{}");
        AppConfig base;
        base.sys.p = 5.0;
        CHECK(load_app_config(path.string(), base).sys.p == 5.0);
        std::filesystem::remove(path);
    }

    SECTION("missing file") {
        CHECK_THROWS_AS(load_app_config("/nonexistent/ambsec.json"), ConfigError);
    }

    SECTION("malformed document") {
        const auto path = temp_file("ambsec_cfg_bad.json", "{\"p\": ");
        try {
            load_app_config(path.string());
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("parse error") != std::string::npos);
        }
        std::filesystem::remove(path);
    }
}
