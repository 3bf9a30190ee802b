#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "validation.hpp"

namespace rigidlid {

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Initial momentum/shear data in the general-(alpha, epsilon) frame, as
/// configured (Gaussian bumps on the grid).
inline StateV initial_data(const ExperimentConfig& cfg, const GridPtr& g) {
    auto gauss = [&](const GaussianSpec& s, double amp) {
        return sample(g, [&](double x) {
            return amp == 0.0 ? 0.0 : amp * std::exp(-(x / s.width) * (x / s.width));
        });
    };
    StateV v(g);
    v.zeta1 = gauss(cfg.zeta1, cfg.zeta1.amp);
    v.zeta2 = gauss(cfg.zeta2, cfg.zeta2.amp);
    v.us = gauss(cfg.us, cfg.us.amp);
    v.m = gauss(cfg.m, cfg.m_amp());
    return v;
}

/// Exact free-surface run for one gamma.  The integration is carried out on
/// the momentum/shear conservation-law form in the normalized frame; there
/// every conserved quantity whose equation is an x-divergence (both layer
/// masses and the horizontal momentum) is a linear invariant of the
/// semi-discretization, which explicit Runge-Kutta preserves to rounding.
/// The physical-variable form is integrated independently by the
/// equivalence check, never here.
struct ExactRun {
    double gamma = 0.0;
    double rho = 0.0;
    Params p;        ///< general-frame parameters of the experiment
    StateV v0_general;
    Trajectory fs2;  ///< packed normalized StateV samples
    MarginReport initial_margin;
    double min_margin = 0.0;
    ConservationReport conservation;  ///< general-frame quantities per accepted step
};

inline ExactRun integrate_exact(const ExperimentConfig& cfg, const GridPtr& g, double gamma) {
    ExactRun run;
    run.gamma = gamma;
    run.p = cfg.params_for(gamma);
    run.rho = run.p.rho();
    run.v0_general = initial_data(cfg, g);

    const Params p = run.p;
    const Params pn = p.normalized();
    const double inv_eps = 1.0 / p.epsilon;
    // unscale a normalized state to the general frame (alpha = rho makes the
    // zeta1 factor 1/eps as well)
    auto to_general_u = [&](const StateV& v) {
        StateU un = v_to_u(v, pn);
        StateU ug(un.zeta1.grid);
        ug.zeta1 = (p.rho() / (p.epsilon * p.alpha)) * un.zeta1;
        ug.zeta2 = inv_eps * un.zeta2;
        ug.u1 = inv_eps * un.u1;
        ug.u2 = inv_eps * un.u2;
        return ug;
    };

    const StateV v0n = normalize_v(run.v0_general, p);
    run.initial_margin = check_hyperbolicity_fs(v_to_u(run.v0_general, p), p, cfg.h0);
    if (!run.initial_margin.pass)
        throw NumericalError("initial data fails the hyperbolicity condition (margin " +
                             format_double(run.initial_margin.margin) + ")");

    SolveSpec spec;
    spec.t_end = cfg.t_end;
    spec.rel_tol = cfg.rel_tol;
    spec.abs_tol = cfg.abs_tol;
    spec.sample_times = SolveSpec::linspace(0.0, cfg.t_end, cfg.samples);

    RhsOptions opt{cfg.dealias};
    double min_margin = run.initial_margin.margin;
    const double h0 = cfg.h0;
    const bool abort = cfg.abort_on_margin;
    // conserved quantities are accumulated at every accepted step, where the
    // state carries the full fifth-order accuracy (the dense-output samples
    // are one order lower and would dominate the drift)
    ConservationReport& rep = run.conservation;
    auto push_conserved = [&, g](double t, const StateU& ug) {
        rep.times.push_back(t);
        rep.mass1.push_back(integral(ug.zeta1));
        rep.mass2.push_back(integral(ug.zeta2));
        rep.momentum.push_back(total_momentum(ug, p));
        rep.energy.push_back(total_energy(ug, p));
    };
    push_conserved(0.0, to_general_u(v0n));
    StepMonitor mon = [&, g](double t, const std::vector<double>& y) {
        const StateU ug = to_general_u(unpack_v(g, y));
        const MarginReport m = check_hyperbolicity_fs(ug, p, h0);
        min_margin = std::min(min_margin, m.margin);
        push_conserved(t, ug);
        return abort ? m.margin >= h0 : true;
    };
    run.fs2 = integrate(make_fs2_rhs(g, pn, opt), pack(v0n), spec, mon);
    run.min_margin = min_margin;
    if (run.fs2.status != SolveStatus::completed)
        throw NumericalError(std::string("free-surface integration ") +
                             to_string(run.fs2.status) + " at t=" +
                             format_double(run.fs2.t_fail));
    rep.finalize_drifts();
    return run;
}

/// Normalized exact momentum/shear state at a sampled time.
inline StateV exact_normalized(const ExactRun& run, const GridPtr& g, double t) {
    return unpack_v(g, run.fs2.at(t));
}

/// Build the approximant of one kind against an exact run (normalized frame).
inline Approximant build_approximant(const ExperimentConfig& cfg, const ExactRun& run,
                                     ApproximantKind kind) {
    SolveSpec spec;
    spec.t_end = cfg.t_end;
    spec.rel_tol = cfg.rel_tol;
    spec.abs_tol = cfg.abs_tol;
    spec.sample_times = SolveSpec::linspace(0.0, cfg.t_end, cfg.samples);
    return assemble(kind, normalize_v(run.v0_general, run.p), run.p.normalized(), spec,
                    RhsOptions{cfg.dealias});
}

inline std::array<double, 4> measure_errors(const ExperimentConfig& cfg, const ExactRun& run,
                                            const Approximant& approx, double t) {
    const GridPtr& g = run.v0_general.grid();
    const StateV exact_t = exact_normalized(run, g, t);
    const StateV ref = cfg.normalization == ErrorNorm::by_current
                           ? exact_t
                           : normalize_v(run.v0_general, run.p);
    return compare(exact_t, approx.evaluate(t), ref, cfg.normalization);
}

// ---------------------------------------------------------------------------
// artifact emission
// ---------------------------------------------------------------------------

inline void write_config_header(std::ofstream& out, const ExperimentConfig& cfg) {
    for (const auto& [k, v] : config_entries(cfg)) out << "# " << k << " = " << v << "\n";
}

inline nlohmann::json config_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    for (const auto& [k, v] : config_entries(cfg)) j[k] = v;
    return j;
}

inline void write_error_table(const std::filesystem::path& path, const ExperimentConfig& cfg,
                              const ErrorTable& table) {
    auto out = open_out(path);
    write_config_header(out, cfg);
    out << "gamma,rho,err_zeta1,err_zeta2,err_us,err_m\n";
    for (const auto& r : table.rows) {
        out << format_double(r.gamma) << ',' << format_double(r.rho);
        for (double e : r.err) out << ',' << format_double(e);
        out << '\n';
    }
}

inline void write_rates_json(const std::filesystem::path& path, const ExperimentConfig& cfg,
                             const ErrorTable& table, const RateFit& fit) {
    nlohmann::json j;
    j["config"] = config_json(cfg);
    j["normalization"] = table.normalization;
    const char* names[4] = {"zeta1", "zeta2", "us", "m"};
    for (std::size_t c = 0; c < 4; ++c) {
        j["slopes"][names[c]] = fit.slope[c];
        j["intercepts"][names[c]] = fit.intercept[c];
        j["residuals"][names[c]] = fit.residual[c];
    }
    j["points"] = fit.points;
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

inline void write_snapshot(const std::filesystem::path& path, const ExperimentConfig& cfg,
                           const GridPtr& g, const std::vector<std::string>& names,
                           const std::vector<const Field*>& fields) {
    auto out = open_out(path);
    write_config_header(out, cfg);
    out << "x";
    for (const auto& n : names) out << ',' << n;
    out << '\n';
    for (std::size_t i = 0; i < g->n(); ++i) {
        out << format_double(g->node(i));
        for (const Field* f : fields) out << ',' << format_double((*f)[i]);
        out << '\n';
    }
}

inline void write_conservation_json(const std::filesystem::path& path,
                                    const ExperimentConfig& cfg, double gamma,
                                    const ConservationReport& rep) {
    nlohmann::json j;
    j["config"] = config_json(cfg);
    j["gamma"] = gamma;
    j["times"] = rep.times;
    j["mass1"] = rep.mass1;
    j["mass2"] = rep.mass2;
    j["momentum"] = rep.momentum;
    j["energy"] = rep.energy;
    j["drift"] = {{"mass1", rep.drift_mass1},
                  {"mass2", rep.drift_mass2},
                  {"momentum", rep.drift_momentum},
                  {"energy", rep.drift_energy}};
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// drivers
// ---------------------------------------------------------------------------

struct SweepOutcome {
    std::map<ApproximantKind, ErrorTable> tables;
    std::map<ApproximantKind, RateFit> fits;
    std::vector<std::string> log;
    std::vector<std::pair<double, std::string>> failures;  ///< (gamma, reason)
};

/// Sweep the gamma list once, sharing each exact free-surface run among all
/// requested approximant kinds.  Rows are ordered by decreasing rho
/// (increasing gamma).  A failing gamma is recorded and skipped so the
/// surviving rows are still emitted; the caller decides how loudly to fail.
inline SweepOutcome run_sweep_multi(const ExperimentConfig& cfg,
                                    const std::vector<ApproximantKind>& kinds) {
    cfg.check();
    const GridPtr g = make_grid(cfg.x_min, cfg.x_max, cfg.n);
    SweepOutcome out;
    for (ApproximantKind k : kinds) {
        out.tables[k].normalization = cfg.normalization == ErrorNorm::by_initial ? "by_initial"
                                      : cfg.normalization == ErrorNorm::by_current
                                          ? "by_current"
                                          : "rms";
    }
    for (double gamma : cfg.gamma_list) {
        try {
            const ExactRun run = integrate_exact(cfg, g, gamma);
            out.log.push_back("gamma=" + format_double_fixed(gamma, 6) +
                              " rho=" + format_double_fixed(run.rho, 6) +
                              " steps=" + std::to_string(run.fs2.accepted) + "+" +
                              std::to_string(run.fs2.rejected) + " dt=[" +
                              format_double(run.fs2.dt_min) + "," +
                              format_double(run.fs2.dt_max) +
                              "] margin=" + format_double(run.min_margin) +
                              " drift(mass2)=" + format_double(run.conservation.drift_mass2) +
                              " drift(energy)=" + format_double(run.conservation.drift_energy));
            for (ApproximantKind k : kinds) {
                const Approximant a = build_approximant(cfg, run, k);
                ErrorRow row;
                row.gamma = gamma;
                row.rho = run.rho;
                row.err = measure_errors(cfg, run, a, cfg.t_end);
                out.tables[k].rows.push_back(row);
            }
        } catch (const std::exception& e) {
            out.failures.emplace_back(gamma, e.what());
            out.log.push_back("gamma=" + format_double_fixed(gamma, 6) +
                              " FAILED: " + e.what());
        }
    }
    if (out.failures.size() == cfg.gamma_list.size())
        throw NumericalError("every gamma in the sweep failed: " + out.failures.front().second);
    return out;
}

struct SimulateOutcome {
    double gamma = 0.0;
    double rho = 0.0;
    std::array<double, 4> errors{};
    ConservationReport conservation;
    std::vector<std::string> log;
};

/// One gamma: exact run, approximant of the configured kind, error
/// quadruple, snapshots (initial data and final exact-vs-approximate
/// fields), conservation report.
inline SimulateOutcome run_simulation(const ExperimentConfig& cfg, double gamma,
                                      const std::filesystem::path& out_dir) {
    cfg.check();
    const GridPtr g = make_grid(cfg.x_min, cfg.x_max, cfg.n);
    const ExactRun run = integrate_exact(cfg, g, gamma);
    const Approximant a = build_approximant(cfg, run, cfg.kind);

    SimulateOutcome res;
    res.gamma = gamma;
    res.rho = run.rho;
    res.errors = measure_errors(cfg, run, a, cfg.t_end);
    res.conservation = run.conservation;

    const StateV v0n = normalize_v(run.v0_general, run.p);
    write_snapshot(out_dir / "snapshot_initial.csv", cfg, g,
                   {"zeta1", "zeta2", "us", "m"},
                   {&v0n.zeta1, &v0n.zeta2, &v0n.us, &v0n.m});

    const StateV exact_T = exact_normalized(run, g, cfg.t_end);
    const StateV approx_T = a.evaluate(cfg.t_end);
    write_snapshot(out_dir / "snapshot_final.csv", cfg, g,
                   {"zeta1_exact", "zeta2_exact", "us_exact", "m_exact", "zeta1_approx",
                    "zeta2_approx", "us_approx", "m_approx"},
                   {&exact_T.zeta1, &exact_T.zeta2, &exact_T.us, &exact_T.m, &approx_T.zeta1,
                    &approx_T.zeta2, &approx_T.us, &approx_T.m});
    write_conservation_json(out_dir / "conservation.json", cfg, gamma, run.conservation);

    ErrorTable table;
    table.rows.push_back({gamma, run.rho, res.errors});
    write_error_table(out_dir / "errors.csv", cfg, table);

    res.log.push_back("gamma=" + format_double_fixed(gamma, 6) +
                      " rho=" + format_double_fixed(run.rho, 6) +
                      " kind=" + to_string(cfg.kind));
    res.log.push_back("steps=" + std::to_string(run.fs2.accepted) + "+" +
                      std::to_string(run.fs2.rejected) + " min_margin=" +
                      format_double(run.min_margin));
    auto log = open_out(out_dir / "run.log");
    for (const auto& [k, v] : config_entries(cfg)) log << "# " << k << " = " << v << "\n";
    for (const auto& line : res.log) log << line << "\n";
    return res;
}

/// Sweep with artifact emission for one kind.  Partial tables are still
/// written when some gammas fail; the rate fit needs at least three rows.
inline SweepOutcome run_sweep(const ExperimentConfig& cfg,
                              const std::filesystem::path& out_dir) {
    SweepOutcome out = run_sweep_multi(cfg, {cfg.kind});
    ErrorTable& table = out.tables[cfg.kind];
    write_error_table(out_dir / "table.csv", cfg, table);
    if (table.rows.size() >= 3) {
        out.fits[cfg.kind] = fit_rate(table);
        write_rates_json(out_dir / "rates.json", cfg, table, out.fits[cfg.kind]);
    }
    auto log = open_out(out_dir / "run.log");
    for (const auto& [k, v] : config_entries(cfg)) log << "# " << k << " = " << v << "\n";
    for (const auto& line : out.log) log << line << "\n";
    return out;
}

/// The full four-panel reproduction: for each approximant kind, the sweep
/// table, fitted rates, and final-time snapshots at the gamma closest to 0.9.
inline std::map<ApproximantKind, SweepOutcome> run_figures(
    ExperimentConfig cfg, const std::filesystem::path& out_dir) {
    std::map<ApproximantKind, SweepOutcome> results;
    const struct {
        ApproximantKind kind;
        Scenario scenario;
        const char* dir;
    } panels[4] = {
        {ApproximantKind::rl_only, Scenario::well_prepared, "f0_rl_only"},
        {ApproximantKind::improved_wp, Scenario::well_prepared, "f1_improved_wp"},
        {ApproximantKind::ip_basic, Scenario::ill_prepared, "f2_ip_basic"},
        {ApproximantKind::ip_improved, Scenario::ill_prepared, "f3_ip_improved"},
    };
    double snap_gamma = cfg.gamma_list.front();
    for (double gm : cfg.gamma_list)
        if (std::abs(gm - 0.9) < std::abs(snap_gamma - 0.9)) snap_gamma = gm;

    // share exact runs between the two kinds of each scenario
    for (Scenario sc : {Scenario::well_prepared, Scenario::ill_prepared}) {
        ExperimentConfig c = cfg;
        c.scenario = sc;
        std::vector<ApproximantKind> kinds;
        for (const auto& p : panels)
            if (p.scenario == sc) kinds.push_back(p.kind);
        SweepOutcome sweep = run_sweep_multi(c, kinds);
        for (const auto& p : panels) {
            if (p.scenario != sc) continue;
            ExperimentConfig ck = c;
            ck.kind = p.kind;
            SweepOutcome single;
            single.tables[p.kind] = sweep.tables[p.kind];
            single.fits[p.kind] = fit_rate(sweep.tables[p.kind]);
            single.log = sweep.log;
            write_error_table(out_dir / p.dir / "table.csv", ck, single.tables[p.kind]);
            write_rates_json(out_dir / p.dir / "rates.json", ck, single.tables[p.kind],
                             single.fits[p.kind]);
            run_simulation(ck, snap_gamma, out_dir / p.dir);
            results[p.kind] = std::move(single);
        }
    }
    return results;
}

/// Reduced-size invariant suite behind the `check` subcommand: exit-style
/// report, one named line per invariant.
inline std::vector<CheckLine> run_check(const ExperimentConfig& cfg) {
    std::vector<CheckLine> lines;
    const Params p = cfg.params_for(cfg.gamma_list.size() > 1 ? cfg.gamma_list[1]
                                                              : cfg.gamma_list[0]);

    for (auto& l : symmetrizer_suite(p.normalized(), 1000)) lines.push_back(l);
    for (auto& l : spectrum_suite(cfg.delta)) lines.push_back(l);

    {
        // n = 512 keeps the Gaussian data spectrally resolved well below the
        // consistency threshold
        const GridPtr g = make_grid(cfg.x_min, cfg.x_max, 512);
        ExperimentConfig small = cfg;
        small.n = 512;
        StateV v0 = initial_data(small, g);
        lines.push_back(fs_fs2_consistency(g, v0, p, 0.5, 1e-9, 1e-6));
    }
    {
        ExperimentConfig small = cfg;
        small.n = 512;
        small.t_end = 1.0;
        small.samples = 5;
        const GridPtr g2 = make_grid(cfg.x_min, cfg.x_max, 512);
        const ExactRun run = integrate_exact(small, g2, p.gamma);
        lines.push_back({"conservation.mass1_drift", run.conservation.drift_mass1, 1e-8});
        lines.push_back({"conservation.mass2_drift", run.conservation.drift_mass2, 1e-8});
        lines.push_back({"conservation.momentum_drift", run.conservation.drift_momentum, 1e-8});
        lines.push_back({"conservation.energy_drift", run.conservation.drift_energy, 1e-6});
    }
    {
        const GridPtr g2 = make_grid(cfg.x_min, cfg.x_max, 1024);
        const Params pn = p.normalized();
        const double c = pn.c_fast();
        lines.push_back(burgers_characteristics_oracle(
            g2, cfg.epsilon * 2.0 / (2.0 * c), 2.0, 1.5 / c, 2.0, 1e-9, 1e-6));
    }
    for (auto& l : integrator_oracles(make_grid(cfg.x_min, cfg.x_max, 512), 1e-10, 1e-7))
        lines.push_back(l);
    return lines;
}

}  // namespace rigidlid
