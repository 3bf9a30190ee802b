#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "approx.hpp"
#include "diagnostics.hpp"
#include "integrator.hpp"
#include "systems.hpp"

namespace rigidlid {

/// One named invariant check: pass iff value <= threshold.
struct CheckLine {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass() const { return value <= threshold; }
};

/// Random free-surface point (normalized frame) satisfying the sufficient
/// hyperbolicity condition with margin >= 0.1.
inline Vec4 random_admissible_u(std::mt19937_64& rng, const Params& p) {
    std::uniform_real_distribution<double> zeta(-0.4, 0.4), vel(-0.5, 0.5), unit(-1.0, 1.0);
    const double r = p.rho();
    for (;;) {
        Vec4 u{zeta(rng), zeta(rng), vel(rng), 0.0};
        const double h1 = 1.0 + r * u[0] - u[1];
        const double h2 = 1.0 / p.delta + u[1];
        if (!(h1 > 0.2 && h2 > 0.2)) continue;
        const double smax = 0.9 * std::sqrt((p.gamma + p.delta) * std::max(h2 - 0.1, 0.0));
        u[3] = u[2] + smax * unit(rng);
        return u;
    }
}

/// Symmetrizer algebra on random admissible points: symmetry of S and S*A,
/// the closed-form Sigma against the product, positive definiteness of S and
/// T, and the analytic Jacobian against central differences.
inline std::vector<CheckLine> symmetrizer_suite(const Params& p, std::size_t npoints,
                                                std::uint64_t seed = 20240901) {
    std::mt19937_64 rng(seed);
    double worst_sa = 0.0, worst_sigma = 0.0, worst_ssym = 0.0, worst_tsym = 0.0;
    double min_eig_s = std::numeric_limits<double>::infinity();
    double min_eig_t = std::numeric_limits<double>::infinity();
    double worst_jac = 0.0;
    const double fd_step = 1e-5;
    for (std::size_t k = 0; k < npoints; ++k) {
        const Vec4 u = random_admissible_u(rng, p);
        const Mat4 S = matrix_S(u, p);
        const Mat4 A = matrix_A(u, p);
        const Mat4 SA = S * A;
        worst_sa = std::max(worst_sa, asymmetry(SA));
        worst_ssym = std::max(worst_ssym, asymmetry(S));
        worst_sigma = std::max(worst_sigma, max_abs(matrix_Sigma(u, p) - SA));
        min_eig_s = std::min(min_eig_s, min_eigenvalue(S));

        const Vec4 v = point_u_to_v(u, p);
        const Mat4 T = matrix_T(v, p);
        worst_tsym = std::max(worst_tsym, asymmetry(T));
        min_eig_t = std::min(min_eig_t, min_eigenvalue(T));
        const Mat4 J = jacobian_F(v, p);
        for (std::size_t j = 0; j < 4; ++j) {
            Vec4 vp = v, vm = v;
            vp[j] += fd_step;
            vm[j] -= fd_step;
            const Vec4 up = point_v_to_u(vp, p), um = point_v_to_u(vm, p);
            for (std::size_t i = 0; i < 4; ++i) {
                const double fd = (up[i] - um[i]) / (2.0 * fd_step);
                worst_jac = std::max(worst_jac, std::abs(J(i, j) - fd));
            }
        }
    }
    return {
        {"symmetrizer.SA_asymmetry", worst_sa, 1e-12},
        {"symmetrizer.S_asymmetry", worst_ssym, 0.0},
        {"symmetrizer.Sigma_vs_SA", worst_sigma, 1e-12},
        {"symmetrizer.T_asymmetry", worst_tsym, 1e-12},
        {"symmetrizer.S_min_eig_positive", -min_eig_s, -1e-12},
        {"symmetrizer.T_min_eig_positive", -min_eig_t, -1e-12},
        {"symmetrizer.dF_vs_central_diff", worst_jac, 1e-6},
    };
}

/// Spectrum of the linear operator: fast eigenvalues approach the barotropic
/// speed at rate rho^2, slow ones approach +-rho at rate rho^3, with one
/// constant over the whole rho range.
inline std::vector<CheckLine> spectrum_suite(double delta,
                                             const std::vector<double>& rhos = {0.05, 0.1, 0.2,
                                                                                0.267},
                                             double cap_fast = 1.0, double cap_slow = 2.0,
                                             double cap_expansion = 10.0) {
    double kf = 0.0, ks = 0.0, expansion = 0.0;
    for (double r : rhos) {
        const double gamma = (1.0 - r * r * delta) / (1.0 + r * r);
        const Params p{gamma, delta, 1.0, r};
        const double c = p.c_fast();
        const Mat4 L = matrix_L(p);
        const Vec4 ev = eigenvalues_L(L);
        kf = std::max(kf, std::max(std::abs(ev[3] - c), std::abs(ev[0] + c)) / (r * r));
        ks = std::max(ks, std::max(std::abs(ev[2] - r), std::abs(ev[1] + r)) / (r * r * r));
        const Mat4 trunc = matrix_L0(delta) + r * matrix_L1(p);
        expansion = std::max(expansion, max_abs(L - trunc) / (r * r));
    }
    return {
        {"spectrum.fast_dev_over_rho2", kf, cap_fast},
        {"spectrum.slow_dev_over_rho3", ks, cap_slow},
        {"spectrum.L_minus_L0_rhoL1_over_rho2", expansion, cap_expansion},
    };
}

// ---------------------------------------------------------------------------
// method-of-lines adapters shared by the harness and the oracles
// ---------------------------------------------------------------------------

inline Rhs make_fs_rhs(const GridPtr& g, const Params& p, const RhsOptions& opt = {}) {
    return [g, p, opt](double, const std::vector<double>& y, std::vector<double>& dy) {
        try {
            dy = pack(rhs_fs(unpack_u(g, y), p, opt));
        } catch (const std::exception&) {
            dy.assign(y.size(), std::numeric_limits<double>::quiet_NaN());
        }
    };
}

inline Rhs make_fs2_rhs(const GridPtr& g, const Params& p, const RhsOptions& opt = {}) {
    return [g, p, opt](double, const std::vector<double>& y, std::vector<double>& dy) {
        try {
            dy = pack(rhs_fs2(unpack_v(g, y), p, opt));
        } catch (const std::exception&) {
            dy.assign(y.size(), std::numeric_limits<double>::quiet_NaN());
        }
    };
}

/// Sup-norm disagreement between the free-surface system integrated in
/// physical variables and in momentum/shear variables, after the change of
/// variables and normalization scaling.  The two integrations are fully
/// independent.
inline CheckLine fs_fs2_consistency(const GridPtr& g, const StateV& v0_general,
                                    const Params& p, double t_end, double tol,
                                    double threshold) {
    SolveSpec spec;
    spec.t_end = t_end;
    spec.rel_tol = spec.abs_tol = tol;
    spec.sample_times = SolveSpec::linspace(0.0, t_end, 5);

    const StateU u0 = v_to_u(v0_general, p);
    Trajectory fs = integrate(make_fs_rhs(g, p), pack(u0), spec);

    const Params pn = p.normalized();
    Trajectory fs2 = integrate(make_fs2_rhs(g, pn), pack(normalize_v(v0_general, p)), spec);

    double worst = std::numeric_limits<double>::infinity();
    if (fs.status == SolveStatus::completed && fs2.status == SolveStatus::completed) {
        worst = 0.0;
        for (std::size_t i = 0; i < spec.sample_times.size(); ++i) {
            const StateV a = normalize_v(u_to_v(unpack_u(g, fs.states[i]), p), p);
            const StateV b = unpack_v(g, fs2.states[i]);
            for (std::size_t c = 0; c < 4; ++c)
                worst = std::max(worst, sup_diff(a.component(c), b.component(c)));
        }
    }
    return {"systems.fs_vs_fs2_sup", worst, threshold};
}

/// Inviscid Burgers by spectral co-moving integration against the method of
/// characteristics for a Gaussian profile amp*exp(-(y/width)^2).
inline CheckLine burgers_characteristics_oracle(const GridPtr& g, double amp, double width,
                                                double coef, double t_end, double tol,
                                                double threshold) {
    auto w0 = [amp, width](double y) { return amp * std::exp(-(y / width) * (y / width)); };
    auto dw0 = [amp, width, w0](double y) { return -2.0 * y / (width * width) * w0(y); };

    Field f0 = sample(g, w0);
    SolveSpec spec;
    spec.t_end = t_end;
    spec.rel_tol = spec.abs_tol = tol;
    spec.sample_times = {0.0, t_end};
    Rhs rhs = [g, coef](double, const std::vector<double>& y, std::vector<double>& dy) {
        Field w(g, y);
        Field flux = (0.5 * coef) * (w * w);
        dy = (-1.0 * deriv(flux)).values;
    };
    Trajectory traj = integrate(rhs, f0.values, spec);
    if (traj.status != SolveStatus::completed)
        return {"approx.burgers_vs_characteristics", std::numeric_limits<double>::infinity(),
                threshold};

    const Field wT(g, traj.at(t_end));
    double worst = 0.0;
    for (std::size_t i = 0; i < g->n(); ++i) {
        const double y = g->node(i);
        double y0 = y;
        for (int it = 0; it < 100; ++it) {
            const double gv = y0 + coef * w0(y0) * t_end - y;
            const double gp = 1.0 + coef * dw0(y0) * t_end;
            const double step = gv / gp;
            y0 -= step;
            if (std::abs(step) < 1e-14) break;
        }
        worst = std::max(worst, std::abs(wT[i] - w0(y0)));
    }
    return {"approx.burgers_vs_characteristics", worst, threshold};
}

/// Scalar exponential-decay and spectral-advection integration oracles.
inline std::vector<CheckLine> integrator_oracles(const GridPtr& g, double adv_tol,
                                                 double adv_threshold) {
    std::vector<CheckLine> lines;
    {
        SolveSpec spec;
        spec.t_end = 1.0;
        spec.rel_tol = spec.abs_tol = 1e-8;
        spec.sample_times = {1.0};
        Rhs rhs = [](double, const std::vector<double>& y, std::vector<double>& dy) {
            dy.assign(1, -y[0]);
        };
        Trajectory t = integrate(rhs, {1.0}, spec);
        const double err = std::abs(t.at(1.0)[0] - std::exp(-1.0));
        lines.push_back({"integrator.exp_decay", err, 1e-8});
    }
    {
        const double c0 = 1.0;
        Field u0 = sample(g, [](double x) { return std::exp(-(x / 2.0) * (x / 2.0)); });
        SolveSpec spec;
        spec.t_end = 1.0;
        spec.rel_tol = spec.abs_tol = adv_tol;
        spec.sample_times = {1.0};
        Rhs rhs = [g, c0](double, const std::vector<double>& y, std::vector<double>& dy) {
            dy = ((-c0) * deriv(Field(g, y))).values;
        };
        Trajectory t = integrate(rhs, u0.values, spec);
        const double err = sup_diff(Field(g, t.at(1.0)), translate(u0, c0 * 1.0));
        lines.push_back({"integrator.advection_vs_translate", err, adv_threshold});
    }
    return lines;
}

}  // namespace rigidlid
