#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace rigidlid {

using Vec4 = std::array<double, 4>;

/// Dense 4x4 real matrix attached to one grid node.  Row-major.
struct Mat4 {
    std::array<double, 16> a{};

    double& operator()(std::size_t i, std::size_t j) { return a[4 * i + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[4 * i + j]; }

    static Mat4 zero() { return Mat4{}; }
    static Mat4 identity() {
        Mat4 m;
        for (std::size_t i = 0; i < 4; ++i) m(i, i) = 1.0;
        return m;
    }
    static Mat4 diag(double d0, double d1, double d2, double d3) {
        Mat4 m;
        m(0, 0) = d0; m(1, 1) = d1; m(2, 2) = d2; m(3, 3) = d3;
        return m;
    }

    Mat4 transposed() const {
        Mat4 t;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool finite() const {
        for (double v : a)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

inline Mat4 operator*(const Mat4& x, const Mat4& y) {
    Mat4 r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 4; ++k) s += x(i, k) * y(k, j);
            r(i, j) = s;
        }
    return r;
}

inline Vec4 operator*(const Mat4& m, const Vec4& v) {
    Vec4 r{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) r[i] += m(i, j) * v[j];
    return r;
}

inline Mat4 operator-(const Mat4& x, const Mat4& y) {
    Mat4 r;
    for (std::size_t i = 0; i < 16; ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
}

inline Mat4 operator+(const Mat4& x, const Mat4& y) {
    Mat4 r;
    for (std::size_t i = 0; i < 16; ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
}

inline Mat4 operator*(double c, const Mat4& x) {
    Mat4 r;
    for (std::size_t i = 0; i < 16; ++i) r.a[i] = c * x.a[i];
    return r;
}

/// Max absolute entry.
inline double max_abs(const Mat4& m) {
    double r = 0.0;
    for (double v : m.a) r = std::max(r, std::abs(v));
    return r;
}

/// Max-abs asymmetry, ||M - M^T||_inf entrywise.
inline double asymmetry(const Mat4& m) {
    double r = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            r = std::max(r, std::abs(m(i, j) - m(j, i)));
    return r;
}

/// Eigenvalues of a symmetric 4x4 matrix by cyclic Jacobi rotations,
/// ascending order.  Plenty for the pointwise symmetrizer checks.
inline Vec4 symmetric_eigenvalues(Mat4 m) {
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < 4; ++p)
            for (std::size_t q = p + 1; q < 4; ++q) off += m(p, q) * m(p, q);
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < 4; ++p)
            for (std::size_t q = p + 1; q < 4; ++q) {
                if (m(p, q) == 0.0) continue;
                const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < 4; ++k) {
                    const double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < 4; ++k) {
                    const double mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
            }
    }
    Vec4 ev{m(0, 0), m(1, 1), m(2, 2), m(3, 3)};
    std::sort(ev.begin(), ev.end());
    return ev;
}

inline double min_eigenvalue(const Mat4& m) { return symmetric_eigenvalues(m)[0]; }

}  // namespace rigidlid
