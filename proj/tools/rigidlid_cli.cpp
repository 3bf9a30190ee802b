// Command-line driver: single runs, gamma sweeps, the four-panel figure
// reproduction, and the reduced invariant suite.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rigidlid/rigidlid.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;
    double gamma = -1.0;
};

rigidlid::ExperimentConfig resolve_config(const CommonOpts& o) {
    rigidlid::ExperimentConfig cfg;
    if (!o.config_path.empty()) cfg = rigidlid::load_config(o.config_path);
    for (const auto& kv : o.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw rigidlid::ConfigError("--set expects key=value, got '" + kv + "'");
        rigidlid::apply_config_entry(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    cfg.check();
    return cfg;
}

void echo_resolved(const rigidlid::ExperimentConfig& cfg) {
    std::cout << "resolved parameters: delta=" << rigidlid::format_double(cfg.delta)
              << " epsilon=" << rigidlid::format_double(cfg.epsilon)
              << " alpha=" << (cfg.alpha < 0 ? "rho" : rigidlid::format_double(cfg.alpha))
              << " T=" << rigidlid::format_double(cfg.t_end) << "\n";
    for (double g : cfg.gamma_list)
        std::cout << "  gamma=" << rigidlid::format_double(g)
                  << "  rho=" << rigidlid::format_double_fixed(cfg.params_for(g).rho(), 6)
                  << "\n";
}

double pick_gamma(const rigidlid::ExperimentConfig& cfg, double requested) {
    if (requested > 0.0) {
        if (!(requested < 1.0))
            throw rigidlid::ConfigError("--gamma must lie in (0,1)");
        return requested;
    }
    for (double g : cfg.gamma_list)
        if (g == 0.9) return g;
    return cfg.gamma_list.front();
}

void add_common(CLI::App* cmd, CommonOpts& o, bool need_out) {
    cmd->add_option("config", o.config_path, "experiment config file (key = value lines)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--set", o.overrides, "override a config key, e.g. --set grid.n=512")
        ->type_name("KEY=VALUE");
    auto* out = cmd->add_option("--out", o.out_dir, "output directory for artifacts");
    if (need_out) out->required();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-layer shallow-water simulator and rigid-lid validation harness"};
    app.require_subcommand(1);

    CommonOpts sim_opts, sweep_opts, fig_opts, check_opts;

    auto* sim = app.add_subcommand("simulate", "single-gamma run with snapshots");
    add_common(sim, sim_opts, true);
    sim->add_option("--gamma", sim_opts.gamma, "density ratio (default: 0.9 if listed)");

    auto* sweep = app.add_subcommand("sweep", "gamma sweep: error table and fitted rates");
    add_common(sweep, sweep_opts, true);

    auto* figures = app.add_subcommand(
        "figures", "sweep + snapshots for all four approximant kinds");
    add_common(figures, fig_opts, true);

    auto* check = app.add_subcommand("check", "run the reduced invariant suite");
    add_common(check, check_opts, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (sim->parsed()) {
            const auto cfg = resolve_config(sim_opts);
            echo_resolved(cfg);
            const double gamma = pick_gamma(cfg, sim_opts.gamma);
            const auto res = rigidlid::run_simulation(cfg, gamma, sim_opts.out_dir);
            for (const auto& line : res.log) std::cout << line << "\n";
            std::cout << "errors at T: zeta1=" << rigidlid::format_double(res.errors[0])
                      << " zeta2=" << rigidlid::format_double(res.errors[1])
                      << " us=" << rigidlid::format_double(res.errors[2])
                      << " m=" << rigidlid::format_double(res.errors[3]) << "\n";
        } else if (sweep->parsed()) {
            const auto cfg = resolve_config(sweep_opts);
            echo_resolved(cfg);
            const auto out = rigidlid::run_sweep(cfg, sweep_opts.out_dir);
            for (const auto& line : out.log) std::cout << line << "\n";
            if (auto it = out.fits.find(cfg.kind); it != out.fits.end()) {
                const auto& fit = it->second;
                std::cout << "fitted slopes: zeta1="
                          << rigidlid::format_double_fixed(fit.slope[0], 3)
                          << " zeta2=" << rigidlid::format_double_fixed(fit.slope[1], 3)
                          << " us=" << rigidlid::format_double_fixed(fit.slope[2], 3)
                          << " m=" << rigidlid::format_double_fixed(fit.slope[3], 3) << "\n";
            }
            if (!out.failures.empty()) {
                std::cerr << "partial results: " << out.failures.size()
                          << " gamma value(s) failed\n";
                return kExitNumerical;
            }
        } else if (figures->parsed()) {
            const auto cfg = resolve_config(fig_opts);
            echo_resolved(cfg);
            const auto results = rigidlid::run_figures(cfg, fig_opts.out_dir);
            for (const auto& [kind, sweep_out] : results) {
                const auto& fit = sweep_out.fits.at(kind);
                std::cout << rigidlid::to_string(kind) << " slopes:"
                          << " zeta1=" << rigidlid::format_double_fixed(fit.slope[0], 3)
                          << " zeta2=" << rigidlid::format_double_fixed(fit.slope[1], 3)
                          << " us=" << rigidlid::format_double_fixed(fit.slope[2], 3)
                          << " m=" << rigidlid::format_double_fixed(fit.slope[3], 3) << "\n";
            }
        } else if (check->parsed()) {
            const auto cfg = resolve_config(check_opts);
            const auto lines = rigidlid::run_check(cfg);
            bool ok = true;
            for (const auto& l : lines) {
                ok = ok && l.pass();
                std::printf("[%s] %-40s value=%.3e threshold=%.3e\n",
                            l.pass() ? "PASS" : "FAIL", l.name.c_str(), l.value, l.threshold);
            }
            if (!ok) return kExitNumerical;
        }
    } catch (const rigidlid::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const CLI::Error& e) {
        std::cerr << "cli error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const rigidlid::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
