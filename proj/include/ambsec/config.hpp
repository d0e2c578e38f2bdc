#pragma once

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ambsec/baselines.hpp"

// JSON run configuration. Every recognized key is optional and overrides the
// built-in default; an unrecognized key is an error so that typos cannot
// silently fall back to defaults.
namespace ambsec {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AppConfig {
    SystemConfig sys{};
    int n_trials = 10000;
    std::uint64_t master_seed = 1;
    double fixed_omega = 0.25;
    OmaInterferenceMode oma_mode = OmaInterferenceMode::cancel;
};

inline void validate(const AppConfig& app) {
    validate(app.sys);
    detail::require(app.n_trials >= 1, "n_trials must be >= 1");
    detail::require(app.fixed_omega > 0.0 && app.fixed_omega <= 0.5,
                    "fixed_omega must be in (0, 0.5]");
}

namespace detail {

inline double config_number(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
    return v.get<double>();
}

inline int config_int(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
    return v.get<int>();
}

inline std::uint64_t config_u64(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                   v.get<std::int64_t>() < 0)) {
        throw ConfigError("config key '" + key + "' must be a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

inline void apply_theta(ThetaMap& theta, const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config key 'theta' must be an object");
    for (const auto& [key, value] : j.items()) {
        const double x = config_number(value, "theta." + key);
        if (key == "gn") {
            theta.g_n = x;
        } else if (key == "gf") {
            theta.g_f = x;
        } else if (key == "gb") {
            theta.g_b = x;
        } else if (key == "hn") {
            theta.h_n = x;
        } else if (key == "hf") {
            theta.h_f = x;
        } else if (key == "gk") {
            theta.g_k = x;
        } else if (key == "hk") {
            theta.h_k = x;
        } else {
            throw ConfigError("unknown config key: theta." + key);
        }
    }
}

}  // namespace detail

// Applies the keys present in j onto app. Throws ConfigError on unknown keys
// or wrong types; range validation happens separately via validate().
inline void apply_json_config(AppConfig& app, const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "p") {
            app.sys.p = detail::config_number(value, key);
        } else if (key == "sigma2") {
            app.sys.sigma2 = detail::config_number(value, key);
        } else if (key == "theta") {
            detail::apply_theta(app.sys.theta, value);
        } else if (key == "k_eds") {
            app.sys.k_eds = detail::config_int(value, key);
        } else if (key == "tol") {
            app.sys.tol = detail::config_number(value, key);
        } else if (key == "max_iters") {
            app.sys.max_iters = detail::config_int(value, key);
        } else if (key == "step0") {
            app.sys.step0 = detail::config_number(value, key);
        } else if (key == "n_trials") {
            app.n_trials = detail::config_int(value, key);
        } else if (key == "master_seed") {
            app.master_seed = detail::config_u64(value, key);
        } else if (key == "fixed_omega") {
            app.fixed_omega = detail::config_number(value, key);
        } else if (key == "oma_interference_mode") {
            if (!value.is_string()) {
                throw ConfigError("config key 'oma_interference_mode' must be a string");
            }
            const auto mode = oma_mode_from_string(value.get<std::string>());
            if (!mode) {
                throw ConfigError("oma_interference_mode must be 'cancel' or 'noise'");
            }
            app.oma_mode = *mode;
        } else {
            throw ConfigError("unknown config key: " + key);
        }
    }
}

inline AppConfig load_app_config(const std::string& path, AppConfig base = {}) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    apply_json_config(base, j);
    return base;
}

}  // namespace ambsec
