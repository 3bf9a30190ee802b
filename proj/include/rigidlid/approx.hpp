#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "integrator.hpp"
#include "systems.hpp"

namespace rigidlid {

/// The four approximate solutions compared against the free-surface system:
///   rl_only      rigid-lid embedding (0, eta, v, 0)
///   improved_wp  + slow corrector and fast corrector from corrector-adjusted
///                initial profiles (well-prepared protocol)
///   ip_basic     rigid-lid + Burgers fast mode (non-small initial fast data)
///   ip_improved  improved_wp's construction on ill-prepared data
/// The improved kinds share one construction; the fast mode rides a Burgers
/// wave in the frame co-moving at +-c/rho.  For well-prepared data the
/// nonlinear term only perturbs the transport at the next order in rho, but
/// it is what the reference experiment uses, and the measured convergence
/// rates are cleaner with it.
enum class ApproximantKind { rl_only, improved_wp, ip_basic, ip_improved };

inline const char* to_string(ApproximantKind k) {
    switch (k) {
        case ApproximantKind::rl_only: return "rl_only";
        case ApproximantKind::improved_wp: return "improved_wp";
        case ApproximantKind::ip_basic: return "ip_basic";
        default: return "ip_improved";
    }
}

inline bool uses_slow_corrector(ApproximantKind k) {
    return k == ApproximantKind::improved_wp || k == ApproximantKind::ip_improved;
}

inline bool uses_burgers(ApproximantKind k) { return k != ApproximantKind::rl_only; }

/// Integrate the rigid-lid system from (eta0, v0); the run stops with
/// condition_lost if the hyperbolicity margin goes negative.
inline Trajectory rigid_lid_solution(const Field& eta0, const Field& v0, const Params& p,
                                     const SolveSpec& spec, const RhsOptions& opt = {}) {
    check_same_grid(eta0, v0);
    const GridPtr g = eta0.grid;
    {
        StateRL s0{eta0, v0};
        if (!check_hyperbolicity_rl(s0, p, 0.0).pass)
            throw std::domain_error("rigid_lid_solution: initial data not hyperbolic");
    }
    Rhs rhs = [g, p, opt](double, const std::vector<double>& y, std::vector<double>& dy) {
        StateRL s = unpack_rl(g, y);
        try {
            dy = pack(rhs_rl(s, p, opt));
        } catch (const std::runtime_error&) {
            dy.assign(y.size(), std::numeric_limits<double>::quiet_NaN());
        }
    };
    StepMonitor mon = [g, p](double, const std::vector<double>& y) {
        return check_hyperbolicity_rl(unpack_rl(g, y), p, 0.0).margin >= 0.0;
    };
    return integrate(rhs, pack(StateRL{eta0, v0}), spec, mon);
}

/// Slow surface corrector (normalized frame):
///   zc1 = -(eta + delta/2 eta^2) - (1-eta)(1/delta+eta) v^2 / (1+1/delta)^2.
inline Field slow_corrector_zeta1(const Field& eta, const Field& v, const Params& p) {
    check_same_grid(eta, v);
    Field out(eta.grid);
    const double idelta = 1.0 / p.delta;
    const double w = (1.0 + idelta) * (1.0 + idelta);
    for (std::size_t i = 0; i < eta.size(); ++i) {
        const double e = eta[i], vv = v[i];
        out[i] = -(e + 0.5 * p.delta * e * e) - (1.0 - e) * (idelta + e) * vv * vv / w;
    }
    return out;
}

/// Time derivative of the slow surface corrector by the chain rule through
/// the rigid-lid right-hand side (no time differencing involved).
inline Field slow_corrector_zeta1_dt(const Field& eta, const Field& v, const Params& p,
                                     const RhsOptions& opt = {}) {
    StateRL d = rhs_rl(StateRL{eta, v}, Params{p.gamma, p.delta, 1.0, p.alpha}, opt);
    Field out(eta.grid);
    const double idelta = 1.0 / p.delta;
    const double w = (1.0 + idelta) * (1.0 + idelta);
    for (std::size_t i = 0; i < eta.size(); ++i) {
        const double e = eta[i], vv = v[i];
        const double dze = -(1.0 + p.delta * e) - vv * vv * (1.0 - idelta - 2.0 * e) / w;
        const double dzv = -2.0 * vv * (1.0 - e) * (idelta + e) / w;
        out[i] = dze * d.eta[i] + dzv * d.v[i];
    }
    return out;
}

/// Leading-order momentum corrector: m = delta/(1+delta) * v.
inline Field slow_corrector_m_simple(const Field& v, const Params& p) {
    return (p.delta / (1.0 + p.delta)) * v;
}

/// Full momentum corrector:
///   m = -int_0^x dt(zc1) dx' + delta*(1-eta)*(1/delta+eta)*v,
/// with the antiderivative anchored at the node nearest x = 0.
inline Field slow_corrector_m_full(const Field& eta, const Field& v, const Params& p,
                                   const RhsOptions& opt = {}) {
    Field dz = slow_corrector_zeta1_dt(eta, v, p, opt);
    Field out = -1.0 * antideriv(dz);
    const double idelta = 1.0 / p.delta;
    for (std::size_t i = 0; i < eta.size(); ++i)
        out[i] += p.delta * (1.0 - eta[i]) * (idelta + eta[i]) * v[i];
    return out;
}

/// Fast corrector transported linearly at speed c/rho:
///   u_pm = (zeta1_adj -+ ... ) / 2, see below; the increment is
///   ( u+(x-ct/rho) + u-(x+ct/rho), 0, 0, c*(u+(x-ct/rho) - u-(x+ct/rho)) ).
inline StateV fast_corrector_linear(const Field& zeta1_adj, const Field& m0, const Params& p,
                                    double t) {
    check_same_grid(zeta1_adj, m0);
    const double c = p.c_fast();
    const GridPtr g = zeta1_adj.grid;
    Field up(g), um(g);
    for (std::size_t i = 0; i < g->n(); ++i) {
        up[i] = 0.5 * (zeta1_adj[i] + m0[i] / c);
        um[i] = 0.5 * (zeta1_adj[i] - m0[i] / c);
    }
    const double shift = c * t / p.rho();
    Field upt = translate(up, shift);
    Field umt = translate(um, -shift);
    StateV inc(g);
    inc.zeta1 = upt + umt;
    inc.m = c * (upt - umt);
    return inc;
}

/// Largest pre-shock horizon of dt(w) +- coef*w*dx(w) = 0 for profile w0:
/// gradient blow-up happens no earlier than 1/(coef*max|dx w0|).
inline double burgers_shock_horizon(const Field& w0, double coef) {
    const double gmax = sup_norm(deriv(w0));
    return gmax > 0.0 ? 1.0 / (coef * gmax) : std::numeric_limits<double>::infinity();
}

/// Nonlinear fast mode: u_pm solve dt(u) +- (c/rho) dx(u) +- 3/(2c) u dx(u) = 0.
/// Solved in the co-moving frame y = x -+ c*t/rho, where the stiff advection
/// drops out and w_pm solve dt(w) +- 3/(2c) w dx(w) = 0; the frame shift is
/// applied afterwards as an exact spectral translation.
struct BurgersFast {
    Params p;  // normalized
    GridPtr grid;
    Trajectory w_plus, w_minus;
    double nonlinearity = 1.0;

    /// Increment (u+ + u-, 0, 0, c*(u+ - u-)) at a sampled time.
    StateV evaluate(double t) const {
        const double c = p.c_fast();
        const double shift = c * t / p.rho();
        Field up = translate(Field(grid, w_plus.at(t)), shift);
        Field um = translate(Field(grid, w_minus.at(t)), -shift);
        StateV inc(grid);
        inc.zeta1 = up + um;
        inc.m = c * (up - um);
        return inc;
    }
};

/// Integrate both co-moving Burgers waves from u_pm(0) = (zeta1_adj +- m0/c)/2.
/// `nonlinearity` scales the quadratic term (0 recovers linear transport).
inline BurgersFast fast_corrector_burgers(const Field& zeta1_adj, const Field& m0,
                                          const Params& p, const SolveSpec& spec,
                                          double nonlinearity = 1.0,
                                          const RhsOptions& opt = {}) {
    check_same_grid(zeta1_adj, m0);
    const double c = p.c_fast();
    const GridPtr g = zeta1_adj.grid;
    Field up0(g), um0(g);
    for (std::size_t i = 0; i < g->n(); ++i) {
        up0[i] = 0.5 * (zeta1_adj[i] + m0[i] / c);
        um0[i] = 0.5 * (zeta1_adj[i] - m0[i] / c);
    }
    const double coef = nonlinearity * 1.5 / c;
    if (coef > 0.0) {
        const double horizon = std::min(burgers_shock_horizon(up0, coef),
                                        burgers_shock_horizon(um0, coef));
        if (spec.t_end - spec.t0 >= horizon)
            throw std::domain_error("fast_corrector_burgers: time window reaches the shock horizon");
    }
    auto make_rhs = [g, coef, opt](double sign) {
        return Rhs([g, coef, opt, sign](double, const std::vector<double>& y,
                                        std::vector<double>& dy) {
            Field w(g, y);
            Field flux = (sign * coef * 0.5) * (w * w);
            dy = (-1.0 * detail::flux_deriv(flux, opt)).values;
        });
    };
    BurgersFast b{p, g, {}, {}, nonlinearity};
    b.w_plus = integrate(make_rhs(+1.0), up0.values, spec);
    b.w_minus = integrate(make_rhs(-1.0), um0.values, spec);
    if (b.w_plus.status != SolveStatus::completed || b.w_minus.status != SolveStatus::completed)
        throw std::runtime_error("fast_corrector_burgers: integration failed");
    return b;
}

/// Assembled approximate solution: rigid-lid trajectory plus the
/// kind-dependent correctors, evaluable at the sampled times.
struct Approximant {
    ApproximantKind kind = ApproximantKind::rl_only;
    Params p;  // normalized
    GridPtr grid;
    Trajectory rl;
    BurgersFast burgers;    // only for Burgers kinds
    Field zeta1_adj, m0;    // fast-mode initial profiles

    StateV evaluate(double t) const {
        StateRL s = unpack_rl(grid, rl.at(t));
        StateV out(grid);
        out.zeta2 = s.eta;
        out.us = s.v;
        if (uses_slow_corrector(kind))
            out.zeta1 = p.rho() * slow_corrector_zeta1(s.eta, s.v, p);
        if (uses_burgers(kind)) {
            StateV inc = burgers.evaluate(t);
            out.zeta1 = out.zeta1 + inc.zeta1;
            out.m = out.m + inc.m;
        }
        return out;
    }
};

/// Build the approximant of the requested kind from normalized initial data.
/// The rigid-lid part always starts from (zeta2, u_s) of v0; the fast-mode
/// profiles are
///   improved_wp / ip_improved: zeta1_adj = zeta1(0) - rho*zc1|_{t=0}
///   ip_basic:                  zeta1_adj = zeta1(0)
/// so that for the corrector kinds evaluate(0) telescopes back to v0 exactly
/// (half of zeta1_adj +- m0/(2c) rides each counter-propagating wave).
inline Approximant assemble(ApproximantKind kind, const StateV& v0, const Params& p,
                            const SolveSpec& spec, const RhsOptions& opt = {}) {
    Approximant a;
    a.kind = kind;
    a.p = p;
    a.grid = v0.grid();
    a.rl = rigid_lid_solution(v0.zeta2, v0.us, Params{p.gamma, p.delta, 1.0, p.alpha}, spec, opt);
    if (a.rl.status != SolveStatus::completed)
        throw std::runtime_error(std::string("assemble: rigid-lid run ") +
                                 to_string(a.rl.status));
    a.zeta1_adj = v0.zeta1;
    a.m0 = v0.m;
    if (uses_slow_corrector(kind)) {
        Field zc0 = slow_corrector_zeta1(v0.zeta2, v0.us, p);
        a.zeta1_adj = a.zeta1_adj - p.rho() * zc0;
    }
    if (uses_burgers(kind))
        a.burgers = fast_corrector_burgers(a.zeta1_adj, a.m0, p, spec, 1.0, opt);
    return a;
}

}  // namespace rigidlid
