#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "grid.hpp"
#include "params.hpp"

namespace rigidlid {

/// Free-surface unknowns (zeta1, zeta2, u1, u2): surface deformation,
/// interface deformation, upper- and lower-layer velocities.  Layer depths
/// follow from the parameters:
///   h1 = 1 + eps*alpha*zeta1 - eps*zeta2,   h2 = 1/delta + eps*zeta2.
struct StateU {
    Field zeta1, zeta2, u1, u2;

    StateU() = default;
    explicit StateU(const GridPtr& g)
        : zeta1(g), zeta2(g), u1(g), u2(g) {}
    StateU(Field z1, Field z2, Field v1, Field v2)
        : zeta1(std::move(z1)), zeta2(std::move(z2)), u1(std::move(v1)), u2(std::move(v2)) {
        check_same_grid(zeta1, zeta2);
        check_same_grid(zeta1, u1);
        check_same_grid(zeta1, u2);
    }

    const GridPtr& grid() const { return zeta1.grid; }

    double h1_at(std::size_t i, const Params& p) const {
        return 1.0 + p.epsilon * (p.alpha * zeta1[i] - zeta2[i]);
    }
    double h2_at(std::size_t i, const Params& p) const {
        return 1.0 / p.delta + p.epsilon * zeta2[i];
    }

    bool finite() const {
        return zeta1.finite() && zeta2.finite() && u1.finite() && u2.finite();
    }
};

/// Momentum/shear unknowns (zeta1, zeta2, u_s, m) of the normalized
/// free-surface system (epsilon = 1, alpha = rho):
///   u_s = u2 - gamma*u1,   m = gamma*h1*u1 + h2*u2,
///   h1 = 1 + rho*zeta1 - zeta2,   h2 = 1/delta + zeta2.
struct StateV {
    Field zeta1, zeta2, us, m;

    StateV() = default;
    explicit StateV(const GridPtr& g)
        : zeta1(g), zeta2(g), us(g), m(g) {}
    StateV(Field z1, Field z2, Field s, Field mm)
        : zeta1(std::move(z1)), zeta2(std::move(z2)), us(std::move(s)), m(std::move(mm)) {
        check_same_grid(zeta1, zeta2);
        check_same_grid(zeta1, us);
        check_same_grid(zeta1, m);
    }

    const GridPtr& grid() const { return zeta1.grid; }

    const Field& component(std::size_t c) const {
        switch (c) {
            case 0: return zeta1;
            case 1: return zeta2;
            case 2: return us;
            default: return m;
        }
    }
    Field& component(std::size_t c) {
        return const_cast<Field&>(static_cast<const StateV*>(this)->component(c));
    }

    bool finite() const {
        return zeta1.finite() && zeta2.finite() && us.finite() && m.finite();
    }
};

/// Rigid-lid unknowns (eta, v): interface deformation and shear velocity.
/// Depths: h1 = 1 - eps*eta, h2 = 1/delta + eps*eta.
struct StateRL {
    Field eta, v;

    StateRL() = default;
    explicit StateRL(const GridPtr& g) : eta(g), v(g) {}
    StateRL(Field e, Field vv) : eta(std::move(e)), v(std::move(vv)) {
        check_same_grid(eta, v);
    }

    const GridPtr& grid() const { return eta.grid; }

    double h1_at(std::size_t i, const Params& p) const {
        return 1.0 - p.epsilon * eta[i];
    }
    double h2_at(std::size_t i, const Params& p) const {
        return 1.0 / p.delta + p.epsilon * eta[i];
    }

    bool finite() const { return eta.finite() && v.finite(); }
};

// flat packing used by the time integrator

inline std::vector<double> pack(const StateU& s) {
    std::vector<double> y;
    y.reserve(4 * s.zeta1.size());
    for (const Field* f : {&s.zeta1, &s.zeta2, &s.u1, &s.u2})
        y.insert(y.end(), f->values.begin(), f->values.end());
    return y;
}

inline StateU unpack_u(const GridPtr& g, const std::vector<double>& y) {
    const std::size_t n = g->n();
    StateU s(g);
    for (std::size_t c = 0; c < 4; ++c) {
        Field* f = (c == 0 ? &s.zeta1 : c == 1 ? &s.zeta2 : c == 2 ? &s.u1 : &s.u2);
        std::copy(y.begin() + c * n, y.begin() + (c + 1) * n, f->values.begin());
    }
    return s;
}

inline std::vector<double> pack(const StateV& s) {
    std::vector<double> y;
    y.reserve(4 * s.zeta1.size());
    for (const Field* f : {&s.zeta1, &s.zeta2, &s.us, &s.m})
        y.insert(y.end(), f->values.begin(), f->values.end());
    return y;
}

inline StateV unpack_v(const GridPtr& g, const std::vector<double>& y) {
    const std::size_t n = g->n();
    StateV s(g);
    for (std::size_t c = 0; c < 4; ++c)
        std::copy(y.begin() + c * n, y.begin() + (c + 1) * n, s.component(c).values.begin());
    return s;
}

inline std::vector<double> pack(const StateRL& s) {
    std::vector<double> y;
    y.reserve(2 * s.eta.size());
    y.insert(y.end(), s.eta.values.begin(), s.eta.values.end());
    y.insert(y.end(), s.v.values.begin(), s.v.values.end());
    return y;
}

inline StateRL unpack_rl(const GridPtr& g, const std::vector<double>& y) {
    const std::size_t n = g->n();
    StateRL s(g);
    std::copy(y.begin(), y.begin() + n, s.eta.values.begin());
    std::copy(y.begin() + n, y.begin() + 2 * n, s.v.values.begin());
    return s;
}

}  // namespace rigidlid
