#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "linalg.hpp"
#include "spectral.hpp"
#include "state.hpp"

namespace rigidlid {

/// Smallest total depth tolerated by the variable changes and the
/// momentum/shear right-hand side.
inline constexpr double kDepthFloor = 1e-10;

struct RhsOptions {
    bool dealias = false;  ///< 2/3-rule on every flux before differentiation
};

namespace detail {
inline Field flux_deriv(const Field& flux, const RhsOptions& opt) {
    return opt.dealias ? deriv(dealias(flux)) : deriv(flux);
}
}  // namespace detail

// ---------------------------------------------------------------------------
// right-hand sides (method of lines, all fluxes in conservation form)
// ---------------------------------------------------------------------------

/// Free-surface system, general (alpha, epsilon):
///   alpha*dt(zeta1) + dx(h1 u1 + h2 u2) = 0
///   dt(zeta2) + dx(h2 u2) = 0
///   dt(u1) + dx( alpha*(delta+gamma)/(1-gamma)*zeta1 + eps/2*u1^2 ) = 0
///   dt(u2) + dx( (delta+gamma)*zeta2 + gamma*alpha*(delta+gamma)/(1-gamma)*zeta1
///                + eps/2*u2^2 ) = 0
inline StateU rhs_fs(const StateU& s, const Params& p, const RhsOptions& opt = {}) {
    if (!(p.alpha > 0.0))
        throw std::domain_error("rhs_fs: alpha must be positive (surface evolution)");
    const GridPtr& g = s.grid();
    const std::size_t n = g->n();
    const double cz1 = p.alpha * (p.delta + p.gamma) / (1.0 - p.gamma);

    Field f1(g), f2(g), f3(g), f4(g);
    for (std::size_t i = 0; i < n; ++i) {
        const double h1 = s.h1_at(i, p), h2 = s.h2_at(i, p);
        const double q2 = h2 * s.u2[i];
        f1[i] = h1 * s.u1[i] + q2;
        f2[i] = q2;
        f3[i] = cz1 * s.zeta1[i] + 0.5 * p.epsilon * s.u1[i] * s.u1[i];
        f4[i] = (p.delta + p.gamma) * s.zeta2[i] + p.gamma * cz1 * s.zeta1[i] +
                0.5 * p.epsilon * s.u2[i] * s.u2[i];
    }
    StateU d(g);
    d.zeta1 = (-1.0 / p.alpha) * detail::flux_deriv(f1, opt);
    d.zeta2 = -1.0 * detail::flux_deriv(f2, opt);
    d.u1 = -1.0 * detail::flux_deriv(f3, opt);
    d.u2 = -1.0 * detail::flux_deriv(f4, opt);
    if (!d.finite()) throw std::runtime_error("rhs_fs: non-finite derivative");
    return d;
}

/// Momentum/shear form of the free-surface system (normalized frame,
/// epsilon = 1, alpha = rho).  The zeta1/zeta2 pressure terms of the m
/// equation are folded into the flux:
///   gamma*(h1+h2)/rho*dx(zeta1) = dx( gamma*(1+1/delta)*zeta1/rho + gamma*zeta1^2/2 )
///   (gamma+delta)*h2*dx(zeta2)  = dx( (gamma+delta)*(zeta2/delta + zeta2^2/2) )
inline StateV rhs_fs2(const StateV& s, const Params& p, const RhsOptions& opt = {}) {
    const GridPtr& g = s.grid();
    const std::size_t n = g->n();
    const double r = p.rho();
    const double gd = p.gamma + p.delta;
    const double idelta = 1.0 / p.delta;

    Field f1(g), f2(g), f3(g), f4(g);
    for (std::size_t i = 0; i < n; ++i) {
        const double z1 = s.zeta1[i], z2 = s.zeta2[i], us = s.us[i], m = s.m[i];
        const double h1 = 1.0 + r * z1 - z2;
        const double h2 = idelta + z2;
        const double H = h1 + h2;
        if (!(H > kDepthFloor)) throw std::runtime_error("rhs_fs2: total depth collapsed");
        const double a = m - h2 * us;  // gamma*H*u1
        const double b = m + h1 * us;  // H*u2
        f1[i] = m / r + (1.0 - p.gamma) / (p.gamma * r) * (h1 * a / H);
        f2[i] = h2 * b / H;
        f3[i] = gd * z2 + 0.5 * (p.gamma * b * b - a * a) / (p.gamma * H * H);
        f4[i] = p.gamma * ((1.0 + idelta) * z1 / r + 0.5 * z1 * z1) +
                gd * (idelta * z2 + 0.5 * z2 * z2) +
                (h1 * a * a + p.gamma * h2 * b * b) / (p.gamma * H * H);
    }
    StateV d(g);
    d.zeta1 = -1.0 * detail::flux_deriv(f1, opt);
    d.zeta2 = -1.0 * detail::flux_deriv(f2, opt);
    d.us = -1.0 * detail::flux_deriv(f3, opt);
    d.m = -1.0 * detail::flux_deriv(f4, opt);
    if (!d.finite()) throw std::runtime_error("rhs_fs2: non-finite derivative");
    return d;
}

/// Rigid-lid system, general epsilon:
///   dt(eta) + dx( h1 h2 v / (h1 + gamma h2) ) = 0
///   dt(v) + dx( (gamma+delta)*eta + eps/2*(h1^2-gamma h2^2) v^2/(h1+gamma h2)^2 ) = 0
inline StateRL rhs_rl(const StateRL& s, const Params& p, const RhsOptions& opt = {}) {
    const GridPtr& g = s.grid();
    const std::size_t n = g->n();
    Field fe(g), fv(g);
    for (std::size_t i = 0; i < n; ++i) {
        const double h1 = s.h1_at(i, p), h2 = s.h2_at(i, p);
        const double w = h1 + p.gamma * h2;
        if (!(w > kDepthFloor)) throw std::runtime_error("rhs_rl: depth collapsed");
        fe[i] = h1 * h2 * s.v[i] / w;
        fv[i] = (p.gamma + p.delta) * s.eta[i] +
                0.5 * p.epsilon * (h1 * h1 - p.gamma * h2 * h2) * s.v[i] * s.v[i] / (w * w);
    }
    StateRL d(g);
    d.eta = -1.0 * detail::flux_deriv(fe, opt);
    d.v = -1.0 * detail::flux_deriv(fv, opt);
    if (!d.finite()) throw std::runtime_error("rhs_rl: non-finite derivative");
    return d;
}

// ---------------------------------------------------------------------------
// change of variables
// ---------------------------------------------------------------------------

/// (zeta, u1, u2) -> (zeta, u_s, m) with the depths of the given parameter
/// frame.  Exact pointwise algebra, inverse of v_to_u.
inline StateV u_to_v(const StateU& s, const Params& p) {
    const GridPtr& g = s.grid();
    StateV v(g);
    v.zeta1 = s.zeta1;
    v.zeta2 = s.zeta2;
    for (std::size_t i = 0; i < g->n(); ++i) {
        const double h1 = s.h1_at(i, p), h2 = s.h2_at(i, p);
        v.us[i] = s.u2[i] - p.gamma * s.u1[i];
        v.m[i] = p.gamma * h1 * s.u1[i] + h2 * s.u2[i];
    }
    return v;
}

inline StateU v_to_u(const StateV& s, const Params& p) {
    const GridPtr& g = s.grid();
    StateU u(g);
    u.zeta1 = s.zeta1;
    u.zeta2 = s.zeta2;
    for (std::size_t i = 0; i < g->n(); ++i) {
        const double h1 = 1.0 + p.epsilon * (p.alpha * s.zeta1[i] - s.zeta2[i]);
        const double h2 = 1.0 / p.delta + p.epsilon * s.zeta2[i];
        const double H = h1 + h2;
        if (!(H > kDepthFloor))
            throw std::domain_error("v_to_u: vanishing total depth");
        u.u1[i] = (s.m[i] - h2 * s.us[i]) / (p.gamma * H);
        u.u2[i] = (s.m[i] + h1 * s.us[i]) / H;
    }
    return u;
}

/// Scaling between the general-(alpha, epsilon) frame and the normalized
/// frame (epsilon = 1, alpha = rho): a solution of the general system maps to
/// (eps*(alpha/rho)*zeta1, eps*zeta2, eps*u1, eps*u2) solving the normalized
/// one, at the same times.
inline StateU normalize_u(const StateU& s, const Params& p) {
    const double e = p.epsilon, a = e * p.alpha / p.rho();
    StateU out(s.grid());
    out.zeta1 = a * s.zeta1;
    out.zeta2 = e * s.zeta2;
    out.u1 = e * s.u1;
    out.u2 = e * s.u2;
    return out;
}

/// Same scaling on momentum/shear variables (u_s and m both scale by eps).
inline StateV normalize_v(const StateV& s, const Params& p) {
    const double e = p.epsilon, a = e * p.alpha / p.rho();
    StateV out(s.grid());
    out.zeta1 = a * s.zeta1;
    out.zeta2 = e * s.zeta2;
    out.us = e * s.us;
    out.m = e * s.m;
    return out;
}

// ---------------------------------------------------------------------------
// pointwise matrices (normalized frame throughout)
// ---------------------------------------------------------------------------

/// Quasilinear matrix A[U] of dt(U) + A[U] dx(U) = 0.
inline Mat4 matrix_A(const Vec4& u, const Params& p) {
    const double r = p.rho();
    const double h1 = 1.0 + r * u[0] - u[1];
    const double h2 = 1.0 / p.delta + u[1];
    Mat4 A;
    A(0, 0) = u[2];           A(0, 1) = (u[3] - u[2]) / r;
    A(0, 2) = h1 / r;         A(0, 3) = h2 / r;
    A(1, 1) = u[3];           A(1, 3) = h2;
    A(2, 0) = 1.0 / r;        A(2, 2) = u[2];
    A(3, 0) = p.gamma / r;    A(3, 1) = p.delta + p.gamma;
    A(3, 3) = u[3];
    return A;
}

/// Symmetrizer S[U]: S and S*A are both symmetric; positive definite on the
/// hyperbolic domain (h1 > 0, h2 - (u2-u1)^2/(gamma+delta) > 0).
inline Mat4 matrix_S(const Vec4& u, const Params& p) {
    const double r = p.rho();
    const double h1 = 1.0 + r * u[0] - u[1];
    const double h2 = 1.0 / p.delta + u[1];
    const double du = u[3] - u[2];
    Mat4 S;
    S(0, 0) = p.gamma;
    S(1, 1) = p.gamma + p.delta;
    S(1, 3) = du;
    S(2, 2) = p.gamma * h1;
    S(3, 1) = du;
    S(3, 3) = h2;
    return S;
}

/// Sigma[U] = S[U]*A[U], closed form.
inline Mat4 matrix_Sigma(const Vec4& u, const Params& p) {
    const double r = p.rho();
    const double g = p.gamma, gd = p.gamma + p.delta;
    const double h1 = 1.0 + r * u[0] - u[1];
    const double h2 = 1.0 / p.delta + u[1];
    const double du = u[3] - u[2];
    Mat4 M;
    M(0, 0) = g * u[2];
    M(0, 1) = g * du / r;      M(1, 0) = M(0, 1);
    M(0, 2) = g * h1 / r;      M(2, 0) = M(0, 2);
    M(0, 3) = g * h2 / r;      M(3, 0) = M(0, 3);
    M(1, 1) = gd * (2.0 * u[3] - u[2]);
    M(1, 3) = gd * h2 + u[3] * du;
    M(3, 1) = M(1, 3);
    M(2, 2) = g * h1 * u[2];
    M(3, 3) = h2 * (2.0 * u[3] - u[2]);
    return M;
}

/// Linear part of the momentum/shear system: dt(V) + (1/rho) L_rho dx(V) = 0
/// at V = 0.
inline Mat4 matrix_L(const Params& p) {
    const double r = p.rho();
    const double g = p.gamma, d = p.delta;
    Mat4 L;
    L(0, 2) = (g - 1.0) / (g * (d + 1.0));
    L(0, 3) = (g + d) / (g * (d + 1.0));
    L(1, 2) = r / (1.0 + d);
    L(1, 3) = r / (1.0 + d);
    L(2, 1) = r * (g + d);
    L(3, 0) = g * (1.0 + 1.0 / d);
    L(3, 1) = r * (d + g) / d;
    return L;
}

/// Leading term of L_rho as rho -> 0 (gamma -> 1).
inline Mat4 matrix_L0(double delta) {
    Mat4 L;
    L(0, 3) = 1.0;
    L(3, 0) = 1.0 + 1.0 / delta;
    return L;
}

/// First-order term: L_rho = L0 + rho*L1 + O(rho^2).
inline Mat4 matrix_L1(const Params& p) {
    const double g = p.gamma, d = p.delta;
    Mat4 L;
    L(1, 2) = 1.0 / (1.0 + d);
    L(1, 3) = 1.0 / (1.0 + d);
    L(2, 1) = g + d;
    L(3, 1) = (d + 1.0) / d;
    return L;
}

/// Orthogonal projector onto ker(L0) = span(e2, e3): the slow-mode
/// components (zeta2, u_s).
inline Mat4 projector_pi() { return Mat4::diag(0.0, 1.0, 1.0, 0.0); }

/// Eigenvalues of L_rho, exploiting its off-diagonal 2x2 block structure:
/// L = [[0, P], [Q, 0]] gives lambda^2 in the spectrum of P*Q, a quadratic.
/// Returned as {fast-, slow-, slow+, fast+} (ascending).
inline Vec4 eigenvalues_L(const Mat4& L) {
    const double p00 = L(0, 2), p01 = L(0, 3), p10 = L(1, 2), p11 = L(1, 3);
    const double q00 = L(2, 0), q01 = L(2, 1), q10 = L(3, 0), q11 = L(3, 1);
    const double tr = p00 * q00 + p01 * q10 + p10 * q01 + p11 * q11;
    const double det = (p00 * p11 - p01 * p10) * (q00 * q11 - q01 * q10);
    const double disc = tr * tr - 4.0 * det;
    if (disc < 0.0) throw std::runtime_error("eigenvalues_L: complex spectrum");
    const double root = std::sqrt(disc);
    const double mu_fast = 0.5 * (tr + root);
    const double mu_slow = 0.5 * (tr - root);
    if (mu_fast < 0.0 || mu_slow < 0.0)
        throw std::runtime_error("eigenvalues_L: negative squared eigenvalue");
    const double lf = std::sqrt(mu_fast), ls = std::sqrt(mu_slow);
    return Vec4{-lf, -ls, ls, lf};
}

/// Jacobian of the map F: (zeta1, zeta2, u_s, m) -> (zeta1, zeta2, u1, u2)
/// (normalized frame), derived analytically from the inversion formulas.
inline Mat4 jacobian_F(const Vec4& v, const Params& p) {
    const double r = p.rho();
    const double h1 = 1.0 + r * v[0] - v[1];
    const double h2 = 1.0 / p.delta + v[1];
    const double H = h1 + h2;
    if (!(std::abs(H) > kDepthFloor))
        throw std::domain_error("jacobian_F: vanishing total depth");
    const double us = v[2];
    const double u1 = (v[3] - h2 * us) / (p.gamma * H);
    const double u2 = (v[3] + h1 * us) / H;
    Mat4 J = Mat4::identity();
    J(2, 0) = -r * u1 / H;
    J(2, 1) = -us / (p.gamma * H);
    J(2, 2) = -h2 / (p.gamma * H);
    J(2, 3) = 1.0 / (p.gamma * H);
    J(3, 0) = r * (us - u2) / H;
    J(3, 1) = -us / H;
    J(3, 2) = h1 / H;
    J(3, 3) = 1.0 / H;
    return J;
}

inline Vec4 point_v_to_u(const Vec4& v, const Params& p) {
    const double r = p.rho();
    const double h1 = 1.0 + r * v[0] - v[1];
    const double h2 = 1.0 / p.delta + v[1];
    const double H = h1 + h2;
    if (!(std::abs(H) > kDepthFloor))
        throw std::domain_error("point_v_to_u: vanishing total depth");
    return Vec4{v[0], v[1], (v[3] - h2 * v[2]) / (p.gamma * H), (v[3] + h1 * v[2]) / H};
}

inline Vec4 point_u_to_v(const Vec4& u, const Params& p) {
    const double r = p.rho();
    const double h1 = 1.0 + r * u[0] - u[1];
    const double h2 = 1.0 / p.delta + u[1];
    return Vec4{u[0], u[1], u[3] - p.gamma * u[2], p.gamma * h1 * u[2] + h2 * u[3]};
}

/// Symmetrizer of the momentum/shear system: T[V] = dF^T S[F(V)] dF.
inline Mat4 matrix_T(const Vec4& v, const Params& p) {
    const Mat4 J = jacobian_F(v, p);
    const Mat4 S = matrix_S(point_v_to_u(v, p), p);
    return J.transposed() * S * J;
}

// ---------------------------------------------------------------------------
// admissibility monitors
// ---------------------------------------------------------------------------

/// Pointwise hyperbolicity margin: the minimum over the grid of the listed
/// expressions, with the location and index of the binding one.
struct MarginReport {
    double margin = 0.0;  ///< min over x of the min expression
    double x_at_min = 0.0;
    int which = 0;  ///< index of the binding expression
    double h0 = 0.0;
    bool pass = false;  ///< margin >= h0
};

/// Free-surface sufficient hyperbolicity condition (general epsilon):
///   e0: h1
///   e1: h2 - eps^2 |u2-u1|^2/(gamma+delta)
///   e2: (h1+gamma*h2)^3 - eps^2 gamma (1+1/delta)^2 |u2-gamma*u1|^2/(gamma+delta)
inline MarginReport check_hyperbolicity_fs(const StateU& s, const Params& p, double h0) {
    const GridPtr& g = s.grid();
    const double e2 = p.epsilon * p.epsilon;
    const double gd = p.gamma + p.delta;
    const double w = p.gamma * (1.0 + 1.0 / p.delta) * (1.0 + 1.0 / p.delta) / gd;
    MarginReport rep;
    rep.margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < g->n(); ++i) {
        const double h1 = s.h1_at(i, p), h2 = s.h2_at(i, p);
        const double du = s.u2[i] - s.u1[i];
        const double dus = s.u2[i] - p.gamma * s.u1[i];
        const double hs = h1 + p.gamma * h2;
        const double e[3] = {h1, h2 - e2 * du * du / gd, hs * hs * hs - e2 * w * dus * dus};
        for (int q = 0; q < 3; ++q)
            if (e[q] < rep.margin) {
                rep.margin = e[q];
                rep.x_at_min = g->node(i);
                rep.which = q;
            }
    }
    rep.h0 = h0;
    rep.pass = rep.margin >= h0;
    return rep;
}

/// Rigid-lid hyperbolicity condition (general epsilon):
///   e0: h1,  e1: h2,
///   e2: gamma + delta - eps^2 gamma (1+1/delta)^2 |v|^2/(h1+gamma*h2)^3
inline MarginReport check_hyperbolicity_rl(const StateRL& s, const Params& p, double h0) {
    const GridPtr& g = s.grid();
    const double e2 = p.epsilon * p.epsilon;
    const double w = p.gamma * (1.0 + 1.0 / p.delta) * (1.0 + 1.0 / p.delta);
    MarginReport rep;
    rep.margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < g->n(); ++i) {
        const double h1 = s.h1_at(i, p), h2 = s.h2_at(i, p);
        const double hs = h1 + p.gamma * h2;
        const double e[3] = {h1, h2,
                             p.gamma + p.delta - e2 * w * s.v[i] * s.v[i] / (hs * hs * hs)};
        for (int q = 0; q < 3; ++q)
            if (e[q] < rep.margin) {
                rep.margin = e[q];
                rep.x_at_min = g->node(i);
                rep.which = q;
            }
    }
    rep.h0 = h0;
    rep.pass = rep.margin >= h0;
    return rep;
}

/// Sizes of the slow and fast components of free-surface data:
///   slow = |zeta2|_{H^s} + |u2 - gamma*u1|_{H^s}
///   fast = (alpha/rho)|zeta1|_{H^s} + |gamma*h1*u1 + h2*u2|_{H^s}
/// Well-prepared data has fast = O(M*rho).
inline std::pair<double, double> check_prepared(const StateU& s, const Params& p, double sr) {
    const GridPtr& g = s.grid();
    Field shear(g), mom(g);
    for (std::size_t i = 0; i < g->n(); ++i) {
        shear[i] = s.u2[i] - p.gamma * s.u1[i];
        mom[i] = p.gamma * s.h1_at(i, p) * s.u1[i] + s.h2_at(i, p) * s.u2[i];
    }
    const double slow = sobolev_norm(s.zeta2, sr) + sobolev_norm(shear, sr);
    const double fast = (p.alpha / p.rho()) * sobolev_norm(s.zeta1, sr) + sobolev_norm(mom, sr);
    return {slow, fast};
}

}  // namespace rigidlid
