#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "integrator.hpp"
#include "systems.hpp"

namespace rigidlid {

/// Energy above the rest state, integrated over the domain.  In the
/// normalized frame (epsilon = 1) this is the conserved
///   E = 1/2 gamma h1 u1^2 + 1/2 h2 u2^2 + p,
///   p = 1/2 ( gamma (delta+gamma)/(1-gamma) (h1+h2)^2 + (gamma+delta) h2^2 );
/// for general epsilon the conserved combination carries the potential part
/// divided by epsilon^2 (the amplitude scaling maps velocities and surface
/// excursions by epsilon, and E is quadratic in both).  The pressure excess
/// is evaluated in factored form, (r+s)^2 - r^2 = s*(2r+s), to avoid
/// cancellation under the O(1/rho^2) prefactor.
inline double total_energy(const StateU& s, const Params& p) {
    const double idelta = 1.0 / p.delta;
    const double cp = p.gamma * (p.delta + p.gamma) / (1.0 - p.gamma);
    const double gd = p.gamma + p.delta;
    const double ie2 = 1.0 / (p.epsilon * p.epsilon);
    double acc = 0.0;
    for (std::size_t i = 0; i < s.zeta1.size(); ++i) {
        const double h1 = s.h1_at(i, p), h2 = s.h2_at(i, p);
        const double s1 = p.epsilon * p.alpha * s.zeta1[i];  // (h1+h2) - rest
        const double s2 = p.epsilon * s.zeta2[i];            // h2 - rest
        acc += 0.5 * p.gamma * h1 * s.u1[i] * s.u1[i] + 0.5 * h2 * s.u2[i] * s.u2[i] +
               ie2 * (0.5 * cp * s1 * (2.0 * (1.0 + idelta) + s1) +
                      0.5 * gd * s2 * (2.0 * idelta + s2));
    }
    return acc * s.grid()->dx();
}

/// Total horizontal momentum (rest value is zero).
inline double total_momentum(const StateU& s, const Params& p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s.zeta1.size(); ++i)
        acc += p.gamma * s.h1_at(i, p) * s.u1[i] + s.h2_at(i, p) * s.u2[i];
    return acc * s.grid()->dx();
}

/// Conserved quadratic surrogate of the rigid-lid system (the rigid-lid
/// reduction of the free-surface energy; masses carry the linear part):
///   (gamma+delta) eta^2 + h1 h2 v^2 / (h1 + gamma h2).
/// Both terms scale by epsilon^2 under the amplitude normalization, so the
/// form is conserved for every epsilon.
inline double rl_energy(const StateRL& s, const Params& p) {
    const double gd = p.gamma + p.delta;
    double acc = 0.0;
    for (std::size_t i = 0; i < s.eta.size(); ++i) {
        const double h1 = s.h1_at(i, p), h2 = s.h2_at(i, p);
        acc += gd * s.eta[i] * s.eta[i] +
               h1 * h2 * s.v[i] * s.v[i] / (h1 + p.gamma * h2);
    }
    return acc * s.grid()->dx();
}

/// Time series of the conserved quantities along a sampled free-surface run,
/// with relative drifts max_t |q(t)-q(0)| / max(|q(0)|, 1).
namespace detail {
inline double drift_of(const std::vector<double>& q) {
    if (q.empty()) return 0.0;
    double d = 0.0;
    for (double v : q) d = std::max(d, std::abs(v - q.front()));
    return d / std::max(std::abs(q.front()), 1.0);
}
}  // namespace detail

struct ConservationReport {
    std::vector<double> times;
    std::vector<double> mass1, mass2, momentum, energy;
    double drift_mass1 = 0.0, drift_mass2 = 0.0, drift_momentum = 0.0, drift_energy = 0.0;

    void finalize_drifts() {
        drift_mass1 = detail::drift_of(mass1);
        drift_mass2 = detail::drift_of(mass2);
        drift_momentum = detail::drift_of(momentum);
        drift_energy = detail::drift_of(energy);
    }
};

/// Conserved-quantity series over the sampled states of a trajectory.
inline ConservationReport conservation_report(const GridPtr& g, const Trajectory& traj,
                                              const Params& p) {
    ConservationReport r;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        StateU s = unpack_u(g, traj.states[i]);
        r.times.push_back(traj.times[i]);
        r.mass1.push_back(integral(s.zeta1));
        r.mass2.push_back(integral(s.zeta2));
        r.momentum.push_back(total_momentum(s, p));
        r.energy.push_back(total_energy(s, p));
    }
    r.finalize_drifts();
    return r;
}

/// Normalization of the per-variable error norms.
enum class ErrorNorm {
    by_initial,  ///< divide by the plain 2-norm of the exact variable at t=0
    by_current,  ///< divide by the exact variable at the same time
    rms          ///< divide by sqrt(n) only
};

/// Per-variable normalized discrete l2 error between two momentum/shear
/// states.  `reference` supplies the normalizing fields (exact data at t=0
/// for by_initial, at the same time for by_current).  Reference variables
/// that are identically zero (2-norm below 1e-3*sqrt(n)*dx) fall back to the
/// plain RMS of the difference.
inline std::array<double, 4> compare(const StateV& exact, const StateV& approx,
                                     const StateV& reference,
                                     ErrorNorm mode = ErrorNorm::by_initial) {
    check_same_grid(exact.zeta1, approx.zeta1);
    check_same_grid(exact.zeta1, reference.zeta1);
    const double n = static_cast<double>(exact.zeta1.size());
    const double floor = 1e-3 * std::sqrt(n) * exact.grid()->dx();
    std::array<double, 4> err{};
    for (std::size_t c = 0; c < 4; ++c) {
        const Field& e = exact.component(c);
        const Field& a = approx.component(c);
        double raw = 0.0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            const double d = e[i] - a[i];
            raw += d * d;
        }
        raw = std::sqrt(raw);
        double denom = std::sqrt(n);
        if (mode != ErrorNorm::rms) {
            const double ref = l2_raw(reference.component(c));
            if (ref > floor) denom = ref;
        }
        err[c] = raw / denom;
    }
    return err;
}

/// l2 norm of (1+x^2)^sigma * f: diagnostic for the spatial-localization
/// hypotheses behind the fast/slow decomposition.
inline double weighted_localization(const Field& f, double sigma) {
    if (!(sigma > 0.5)) throw std::invalid_argument("weighted_localization: sigma must exceed 1/2");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = f.grid->node(i);
        const double wf = std::pow(1.0 + x * x, sigma) * f[i];
        acc += wf * wf;
    }
    return std::sqrt(acc * f.grid->dx());
}

/// One sweep row: errors of the four variables at the final time for one
/// gamma (= one rho).
struct ErrorRow {
    double gamma = 0.0;
    double rho = 0.0;
    std::array<double, 4> err{};  // zeta1, zeta2, us, m
};

struct ErrorTable {
    std::vector<ErrorRow> rows;
    std::string normalization = "by_initial";
};

/// Least-squares slope/intercept of log(err) against log(rho), per variable.
struct RateFit {
    std::array<double, 4> slope{};
    std::array<double, 4> intercept{};
    std::array<double, 4> residual{};  // rms of fit residuals
    std::size_t points = 0;
};

inline RateFit fit_rate(const ErrorTable& table) {
    const std::size_t m = table.rows.size();
    if (m < 3) throw std::invalid_argument("fit_rate: need at least 3 rows");
    RateFit fit;
    fit.points = m;
    for (std::size_t c = 0; c < 4; ++c) {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        for (const auto& row : table.rows) {
            if (!(row.err[c] > 0.0))
                throw std::domain_error("fit_rate: non-positive error entry");
            const double x = std::log(row.rho), y = std::log(row.err[c]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double dn = static_cast<double>(m);
        const double denom = dn * sxx - sx * sx;
        fit.slope[c] = (dn * sxy - sx * sy) / denom;
        fit.intercept[c] = (sy - fit.slope[c] * sx) / dn;
        double rss = 0.0;
        for (const auto& row : table.rows) {
            const double r =
                std::log(row.err[c]) - fit.slope[c] * std::log(row.rho) - fit.intercept[c];
            rss += r * r;
        }
        fit.residual[c] = std::sqrt(rss / dn);
    }
    return fit;
}

}  // namespace rigidlid
