// Acceptance suite: runs the full-scale validation protocol and prints one
// PASS/FAIL line per criterion.  Exit code 0 iff everything passes.
//
// Scale: n = 2000 on [-100, 100], T = 4, tolerances 1e-8, nine gamma values.

#include <array>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "rigidlid/rigidlid.hpp"

using namespace rigidlid;

namespace {

struct Criterion {
    std::string label;
    bool pass = false;
    std::string detail;
};

std::vector<Criterion> g_results;

void record(const std::string& label, bool pass, const std::string& detail) {
    g_results.push_back({label, pass, detail});
    std::printf("[%s] %s  %s\n", pass ? "PASS" : "FAIL", label.c_str(), detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double v) { return format_double_fixed(v, 3); }

bool in_window(double v, double lo, double hi) { return v >= lo && v <= hi; }

struct SweepData {
    std::map<ApproximantKind, ErrorTable> tables;
    double worst_mass = 0.0, worst_momentum = 0.0, worst_energy = 0.0;
};

SweepData run_scenario(const ExperimentConfig& cfg, const std::vector<ApproximantKind>& kinds) {
    const GridPtr g = make_grid(cfg.x_min, cfg.x_max, cfg.n);
    SweepData data;
    for (double gamma : cfg.gamma_list) {
        const ExactRun run = integrate_exact(cfg, g, gamma);
        data.worst_mass = std::max({data.worst_mass, run.conservation.drift_mass1,
                                    run.conservation.drift_mass2});
        data.worst_momentum = std::max(data.worst_momentum, run.conservation.drift_momentum);
        data.worst_energy = std::max(data.worst_energy, run.conservation.drift_energy);
        for (ApproximantKind k : kinds) {
            const Approximant a = build_approximant(cfg, run, k);
            ErrorRow row;
            row.gamma = gamma;
            row.rho = run.rho;
            row.err = measure_errors(cfg, run, a, cfg.t_end);
            data.tables[k].rows.push_back(row);
        }
        std::printf("  .. %s gamma=%.4f rho=%.4f steps=%zu\n", to_string(cfg.scenario),
                    gamma, run.rho, run.fs2.accepted);
        std::fflush(stdout);
    }
    return data;
}

std::string slopes_detail(const RateFit& fit) {
    return "slopes zeta1=" + fmt(fit.slope[0]) + " zeta2=" + fmt(fit.slope[1]) +
           " us=" + fmt(fit.slope[2]) + " m=" + fmt(fit.slope[3]);
}

}  // namespace

int main() {
    ExperimentConfig base;  // defaults are the full protocol

    // --- criterion 3: symmetrizer suite on 1e4 random admissible points ----
    {
        const Params p = base.params_for(0.9).normalized();
        bool ok = true;
        std::string detail;
        for (const auto& line : symmetrizer_suite(p, 10000)) {
            ok = ok && line.pass();
            if (!line.pass()) detail += line.name + "=" + format_double(line.value) + " ";
        }
        if (ok) detail = "SA symmetry, S/T positivity, dF vs FD all within bounds";
        record("criterion 3: symmetrizer suite (1e4 points)", ok, detail);
    }

    // --- criterion 4: spectrum of the linear operator ----------------------
    {
        const auto lines = spectrum_suite(base.delta, {0.05, 0.1, 0.2, 0.267});
        const bool ok = lines[0].pass() && lines[1].pass();
        record("criterion 4: spectrum of L_rho", ok,
               "K_fast=" + fmt(lines[0].value) + " (cap " + fmt(lines[0].threshold) +
                   "), K_slow=" + fmt(lines[1].value) + " (cap " + fmt(lines[1].threshold) +
                   ")");
    }

    // --- criterion 10: transport/ODE oracles -------------------------------
    {
        const GridPtr g = make_grid(base.x_min, base.x_max, base.n);
        const auto lines = integrator_oracles(g, 1e-10, 1e-7);
        bool ok = true;
        std::string detail;
        for (const auto& l : lines) {
            ok = ok && l.pass();
            detail += l.name + "=" + format_double(l.value) + " ";
        }
        record("criterion 10: transport/ODE oracles", ok, detail);
    }

    // --- criterion 9: Burgers vs method of characteristics -----------------
    {
        const GridPtr g = make_grid(base.x_min, base.x_max, base.n);
        const Params p = base.params_for(0.9).normalized();
        const double c = p.c_fast();
        // ill-prepared normalized fast profile: w+(0) = eps*2*exp(-(x/2)^2)/(2c)
        const double amp = base.epsilon * 2.0 / (2.0 * c);
        const CheckLine line =
            burgers_characteristics_oracle(g, amp, 2.0, 1.5 / c, 4.0, 1e-8, 1e-6);
        record("criterion 9: Burgers characteristics oracle", line.pass(),
               "sup error=" + format_double(line.value));
    }

    // --- criterion 1: FS vs FS2 equivalence --------------------------------
    {
        // run both sides at 1e-10 so the comparison probes the equivalence of
        // the two formulations rather than the trajectory error of the
        // integrator (at 1e-8 each run alone accumulates ~1e-6 over T=1)
        const GridPtr g = make_grid(base.x_min, base.x_max, base.n);
        const Params p = base.params_for(0.9);
        const StateV v0 = initial_data(base, g);  // well-prepared data
        const CheckLine line = fs_fs2_consistency(g, v0, p, 1.0, 1e-10, 1e-6);
        record("criterion 1: FS/FS2 equivalence (T=1)", line.pass(),
               "sup disagreement=" + format_double(line.value));
    }

    // --- sweeps (criteria 2 and 5-8) ----------------------------------------
    std::printf("running well-prepared sweep (9 gammas)...\n");
    ExperimentConfig wp = base;
    wp.scenario = Scenario::well_prepared;
    const SweepData wp_data =
        run_scenario(wp, {ApproximantKind::rl_only, ApproximantKind::improved_wp});

    std::printf("running ill-prepared sweep (9 gammas)...\n");
    ExperimentConfig ip = base;
    ip.scenario = Scenario::ill_prepared;
    const SweepData ip_data =
        run_scenario(ip, {ApproximantKind::ip_basic, ApproximantKind::ip_improved});

    // --- criterion 2: conservation along every completed run ---------------
    {
        const double mass = std::max(wp_data.worst_mass, ip_data.worst_mass);
        const double mom = std::max(wp_data.worst_momentum, ip_data.worst_momentum);
        const double en = std::max(wp_data.worst_energy, ip_data.worst_energy);
        const bool ok = mass <= 1e-8 && mom <= 1e-8 && en <= 1e-6;
        record("criterion 2: conservation drifts over T=4", ok,
               "mass=" + format_double(mass) + " momentum=" + format_double(mom) +
                   " energy=" + format_double(en));
    }

    // --- criterion 5: rates for the bare rigid-lid approximation -----------
    {
        const RateFit fit = fit_rate(wp_data.tables.at(ApproximantKind::rl_only));
        const bool ok = in_window(fit.slope[1], 1.7, 2.3) && in_window(fit.slope[2], 1.7, 2.3) &&
                        in_window(fit.slope[0], 0.7, 1.3) && in_window(fit.slope[3], 0.7, 1.3);
        record("criterion 5: WP rl_only rates", ok, slopes_detail(fit));
    }

    // --- criterion 6: rates for the improved approximation -----------------
    {
        const RateFit fit = fit_rate(wp_data.tables.at(ApproximantKind::improved_wp));
        bool ok = true;
        for (std::size_t c = 0; c < 4; ++c) ok = ok && in_window(fit.slope[c], 1.7, 2.3);
        record("criterion 6: WP improved rates", ok, slopes_detail(fit));
    }

    // --- criterion 7: rates for ill-prepared data --------------------------
    {
        const RateFit fit = fit_rate(ip_data.tables.at(ApproximantKind::ip_basic));
        const bool ok = in_window(fit.slope[0], 0.7, 1.3) && in_window(fit.slope[3], 0.7, 1.3) &&
                        in_window(fit.slope[1], 0.9, 1.5) && in_window(fit.slope[2], 1.2, 1.8);
        record("criterion 7: IP basic rates", ok, slopes_detail(fit));
    }

    // --- criterion 8: improved IP approximant dominates the basic one ------
    {
        const ErrorTable& basic = ip_data.tables.at(ApproximantKind::ip_basic);
        const ErrorTable& improved = ip_data.tables.at(ApproximantKind::ip_improved);
        bool strict_fast = true;   // zeta1 and m strictly improve
        bool slow_unchanged = true;  // zeta2 and u_s are untouched by construction
        for (std::size_t i = 0; i < basic.rows.size(); ++i) {
            strict_fast = strict_fast && improved.rows[i].err[0] < basic.rows[i].err[0] &&
                          improved.rows[i].err[3] < basic.rows[i].err[3];
            for (std::size_t c : {std::size_t{1}, std::size_t{2}})
                slow_unchanged = slow_unchanged &&
                                 improved.rows[i].err[c] <= basic.rows[i].err[c] + 1e-12;
        }
        const RateFit fit = fit_rate(improved);
        const bool slopes_ok = in_window(fit.slope[0], 0.7, 1.3) &&
                               in_window(fit.slope[3], 0.7, 1.3);
        record("criterion 8: IP improved vs basic", strict_fast && slow_unchanged && slopes_ok,
               std::string("strict on zeta1/m=") + (strict_fast ? "yes" : "no") +
                   ", zeta2/us not worse=" + (slow_unchanged ? "yes" : "no") + ", " +
                   slopes_detail(fit));
    }

    std::printf("\n%zu criteria evaluated\n", g_results.size());
    bool all = true;
    for (const auto& r : g_results) all = all && r.pass;
    std::printf("acceptance: %s\n", all ? "ALL PASS" : "FAILURES PRESENT");
    return all ? 0 : 1;
}
