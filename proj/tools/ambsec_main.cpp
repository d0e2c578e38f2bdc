// Command-line front end: single solves, power and eavesdropper sweeps,
// convergence traces, and an oracle cross-check gate. Emits plot-ready CSV
// and JSON artifacts; all outputs are deterministic in (config, flags).

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ambsec/ambsec.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<double> p;
    std::optional<int> k_eds;
    std::optional<double> tol;
    std::optional<int> max_iters;
    std::optional<double> step0;
    std::optional<double> fixed_omega;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "JSON configuration file");
    cmd->add_option("--out", f.out_dir, "output directory (default .)");
    cmd->add_option("--seed", f.seed, "master seed for channel sampling");
    cmd->add_option("--trials", f.trials, "number of Monte Carlo trials");
    cmd->add_option("--p", f.p, "BS transmit power in watts");
    cmd->add_option("--k-eds", f.k_eds, "number of eavesdroppers");
    cmd->add_option("--tol", f.tol, "solver convergence precision");
    cmd->add_option("--max-iters", f.max_iters, "solver iteration cap");
    cmd->add_option("--step0", f.step0, "initial dual step size");
    cmd->add_option("--fixed-omega", f.fixed_omega, "power split used by noma-subopt");
}

// Defaults, then config file, then flags; validated at the end.
ambsec::AppConfig resolve_config(const CommonFlags& f, ambsec::AppConfig base) {
    if (!f.config_path.empty()) base = ambsec::load_app_config(f.config_path, base);
    if (f.seed) base.master_seed = *f.seed;
    if (f.trials) base.n_trials = *f.trials;
    if (f.p) base.sys.p = *f.p;
    if (f.k_eds) base.sys.k_eds = *f.k_eds;
    if (f.tol) base.sys.tol = *f.tol;
    if (f.max_iters) base.sys.max_iters = *f.max_iters;
    if (f.step0) base.sys.step0 = *f.step0;
    if (f.fixed_omega) base.fixed_omega = *f.fixed_omega;
    ambsec::validate(base);
    return base;
}

std::filesystem::path prepare_out_dir(const std::string& out_dir) {
    std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ambsec::IoError("cannot create output directory: " + out_dir);
    return dir;
}

ambsec::SchemeKind parse_scheme(const std::string& s) {
    const auto kind = ambsec::scheme_from_string(s);
    if (!kind) throw ambsec::ConfigError("unknown scheme: " + s);
    return *kind;
}

std::vector<ambsec::SchemeKind> scheme_set(const std::string& scheme_flag) {
    if (scheme_flag.empty()) {
        return {ambsec::SchemeKind::noma_optimal, ambsec::SchemeKind::noma_suboptimal,
                ambsec::SchemeKind::oma_optimal};
    }
    return {parse_scheme(scheme_flag)};
}

int cmd_solve(const CommonFlags& flags, const std::string& scheme_flag) {
    const ambsec::AppConfig app = resolve_config(flags, ambsec::AppConfig{});
    const ambsec::SchemeKind kind = parse_scheme(scheme_flag);

    const ambsec::ChannelRealization ch = ambsec::sample_channels(app.sys, 0, app.master_seed);
    const ambsec::SolveResult res =
        ambsec::run_scheme(kind, ch, app.sys, {app.fixed_omega, app.oma_mode});

    nlohmann::json j;
    j["scheme"] = ambsec::to_string(kind);
    j["master_seed"] = app.master_seed;
    j["p"] = app.sys.p;
    j["sigma2"] = app.sys.sigma2;
    j["k_eds"] = app.sys.k_eds;
    j["alpha"] = res.controls.alpha;
    j["omega"] = res.controls.omega;
    j["secrecy"] = res.secrecy;
    j["iterations"] = res.iterations;
    j["converged"] = res.converged;
    nlohmann::json trace = nlohmann::json::array();
    for (const ambsec::TraceRow& row : res.trace) {
        trace.push_back({{"iter", row.iter},
                         {"alpha", row.alpha},
                         {"omega", row.omega},
                         {"zeta", row.zeta},
                         {"lambda", row.lambda},
                         {"objective", row.objective}});
    }
    j["trace"] = std::move(trace);

    const std::filesystem::path dir = prepare_out_dir(flags.out_dir);
    ambsec::write_text_file((dir / "solve.json").string(), j.dump(2) + "\n");

    std::printf("scheme=%s seed=%" PRIu64 " alpha=%s omega=%s secrecy=%s iterations=%d converged=%d\n",
                std::string(ambsec::to_string(kind)).c_str(), app.master_seed,
                ambsec::format_double(res.controls.alpha).c_str(),
                ambsec::format_double(res.controls.omega).c_str(),
                ambsec::format_double(res.secrecy).c_str(), res.iterations,
                res.converged ? 1 : 0);
    return 0;
}

int run_sweep(const CommonFlags& flags, const std::string& scheme_flag,
              ambsec::SweepVariable sweep, std::vector<double> values,
              const std::string& stem, ambsec::AppConfig base) {
    const ambsec::AppConfig app = resolve_config(flags, std::move(base));

    ambsec::TrialPlan plan;
    plan.n_trials = app.n_trials;
    plan.master_seed = app.master_seed;
    plan.sweep = sweep;
    plan.sweep_values = std::move(values);
    plan.schemes = scheme_set(scheme_flag);
    plan.options = {app.fixed_omega, app.oma_mode};
    ambsec::validate(plan);

    std::vector<ambsec::TrialRecord> records;
    const std::vector<ambsec::TrialAggregate> aggregates =
        ambsec::run_plan(plan, app.sys, &records);

    const std::filesystem::path dir = prepare_out_dir(flags.out_dir);
    const std::string agg_path = (dir / (stem + ".csv")).string();
    const std::string rec_path = (dir / (stem + "_trials.csv")).string();
    ambsec::write_text_file(agg_path, ambsec::aggregates_csv(aggregates));
    ambsec::write_text_file(rec_path, ambsec::trial_records_csv(records));

    std::printf("wrote %s (%zu aggregate rows) and %s (%zu trial rows)\n", agg_path.c_str(),
                aggregates.size(), rec_path.c_str(), records.size());
    return 0;
}

int cmd_sweep_power(const CommonFlags& flags, const std::string& scheme_flag) {
    std::vector<double> grid;
    if (flags.p) {
        grid = {*flags.p};
    } else {
        for (int w = 1; w <= 15; ++w) grid.push_back(static_cast<double>(w));
    }
    ambsec::AppConfig base;
    base.sys.k_eds = 5;
    return run_sweep(flags, scheme_flag, ambsec::SweepVariable::bs_power, std::move(grid),
                     "sweep_power", std::move(base));
}

int cmd_sweep_eds(const CommonFlags& flags, const std::string& scheme_flag) {
    std::vector<double> grid;
    if (flags.k_eds) {
        grid = {static_cast<double>(*flags.k_eds)};
    } else {
        for (int k = 1; k <= 10; ++k) grid.push_back(static_cast<double>(k));
    }
    return run_sweep(flags, scheme_flag, ambsec::SweepVariable::ed_count, std::move(grid),
                     "sweep_eds", ambsec::AppConfig{});
}

int cmd_trace(const CommonFlags& flags) {
    const ambsec::AppConfig app = resolve_config(flags, ambsec::AppConfig{});
    const std::vector<double> powers =
        flags.p ? std::vector<double>{*flags.p} : std::vector<double>{7.0, 10.0, 15.0};

    const std::filesystem::path dir = prepare_out_dir(flags.out_dir);
    for (double p : powers) {
        ambsec::SystemConfig cfg = app.sys;
        cfg.p = p;
        const std::vector<ambsec::TraceRow> rows =
            ambsec::convergence_trace(cfg, app.master_seed, 1);
        const std::string path =
            (dir / ("trace_p" + ambsec::format_double(p) + ".csv")).string();
        ambsec::write_text_file(path, ambsec::trace_csv(rows));
        std::printf("p=%s: %zu iterations, final objective %s, wrote %s\n",
                    ambsec::format_double(p).c_str(), rows.size(),
                    ambsec::format_double(rows.back().objective).c_str(), path.c_str());
    }
    return 0;
}

int cmd_oracle_check(const CommonFlags& flags, std::optional<int> corrupt_instance) {
    ambsec::AppConfig base;
    base.n_trials = 100;
    const ambsec::AppConfig app = resolve_config(flags, std::move(base));

    double max_solve_grid = 0.0;
    double max_grid_endpoint = 0.0;
    for (int i = 0; i < app.n_trials; ++i) {
        const ambsec::ChannelRealization ch =
            ambsec::sample_channels(app.sys, static_cast<std::uint64_t>(i), app.master_seed);
        ambsec::SolveResult solve = ambsec::solve_dual(ch, app.sys);
        const ambsec::SolveResult grid = ambsec::grid_oracle(ch, app.sys);
        const ambsec::SolveResult endpoint = ambsec::endpoint_oracle(ch, app.sys);

        if (corrupt_instance && *corrupt_instance == i) {
            // Test hook: flip alpha to the wrong endpoint and recompute.
            solve.controls.alpha = 1.0 - solve.controls.alpha;
            solve.secrecy = ambsec::secrecy_rate(ch, app.sys, solve.controls);
        }

        // Objective change across one lattice cell bounds the discretization
        // error of the grid argmax.
        const double a = ambsec::legit_backscatter_gain(ch, app.sys);
        const double b = ambsec::best_ed_backscatter_gain(ch, app.sys);
        const double h = 1.0 / 200.0;
        const auto clamped = [&](double alpha) {
            return std::max(0.0, ambsec::secrecy_objective(a, b, alpha));
        };
        const double cell_bound =
            std::max(std::fabs(clamped(1.0) - clamped(1.0 - h)),
                     std::fabs(clamped(h) - clamped(0.0))) +
            1e-12;

        const double dev_solve = std::fabs(solve.secrecy - grid.secrecy);
        const double dev_grid = std::fabs(grid.secrecy - endpoint.secrecy);
        max_solve_grid = std::max(max_solve_grid, dev_solve);
        max_grid_endpoint = std::max(max_grid_endpoint, dev_grid);

        std::printf("instance %d: solve=%s grid=%s endpoint=%s\n", i,
                    ambsec::format_double(solve.secrecy).c_str(),
                    ambsec::format_double(grid.secrecy).c_str(),
                    ambsec::format_double(endpoint.secrecy).c_str());

        if (dev_solve > 1e-3 || dev_grid > cell_bound) {
            std::printf("violation at instance %d (master_seed %" PRIu64
                        "): |solve-grid|=%s |grid-endpoint|=%s\n",
                        i, app.master_seed, ambsec::format_double(dev_solve).c_str(),
                        ambsec::format_double(dev_grid).c_str());
            return 3;
        }
    }
    std::printf("checked %d instances: max |solve-grid|=%s max |grid-endpoint|=%s\n",
                app.n_trials, ambsec::format_double(max_solve_grid).c_str(),
                ambsec::format_double(max_grid_endpoint).c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secrecy-rate simulation for a NOMA downlink with an ambient backscatter node"};
    app.require_subcommand(1);

    CommonFlags solve_flags;
    std::string solve_scheme = "noma-opt";
    CLI::App* solve = app.add_subcommand("solve", "solve one seeded channel instance");
    add_common_flags(solve, solve_flags);
    solve->add_option("--scheme", solve_scheme, "noma-opt | noma-subopt | oma");

    CommonFlags sweep_power_flags;
    std::string sweep_power_scheme;
    CLI::App* sweep_power =
        app.add_subcommand("sweep-power", "mean secrecy rate versus BS power");
    add_common_flags(sweep_power, sweep_power_flags);
    sweep_power->add_option("--scheme", sweep_power_scheme,
                            "restrict to one scheme (default: all three)");

    CommonFlags sweep_eds_flags;
    std::string sweep_eds_scheme;
    CLI::App* sweep_eds =
        app.add_subcommand("sweep-eds", "mean secrecy rate versus eavesdropper count");
    add_common_flags(sweep_eds, sweep_eds_flags);
    sweep_eds->add_option("--scheme", sweep_eds_scheme,
                          "restrict to one scheme (default: all three)");

    CommonFlags trace_flags;
    CLI::App* trace = app.add_subcommand("trace", "per-iteration solver path");
    add_common_flags(trace, trace_flags);

    CommonFlags oracle_flags;
    std::optional<int> corrupt_instance;
    CLI::App* oracle = app.add_subcommand("oracle-check",
                                          "cross-check the solver against both oracles");
    add_common_flags(oracle, oracle_flags);
    oracle->add_option("--corrupt-instance", corrupt_instance)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (solve->parsed()) return cmd_solve(solve_flags, solve_scheme);
        if (sweep_power->parsed()) return cmd_sweep_power(sweep_power_flags, sweep_power_scheme);
        if (sweep_eds->parsed()) return cmd_sweep_eds(sweep_eds_flags, sweep_eds_scheme);
        if (trace->parsed()) return cmd_trace(trace_flags);
        if (oracle->parsed()) return cmd_oracle_check(oracle_flags, corrupt_instance);
    } catch (const ambsec::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const ambsec::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
