#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "fft.hpp"
#include "grid.hpp"

namespace rigidlid {

/// Pseudo-spectral derivative: multiply by i*k in frequency space.  The
/// derivative of the Nyquist mode is set to zero (the usual convention for
/// real data on an even grid).
inline Field deriv(const Field& f) {
    if (!f.finite()) throw std::invalid_argument("deriv: non-finite input");
    const Grid& g = *f.grid;
    auto& ws = detail::workspace_for(g.n());
    ws.forward(f.values);
    auto& spec = ws.spec();
    const auto& k = g.wavenumbers();
    const std::size_t nb = g.n() / 2;
    for (std::size_t j = 0; j < nb; ++j)
        spec[j] = std::complex<double>(0.0, k[j]) * spec[j];
    spec[nb] = 0.0;
    Field out(f.grid);
    ws.inverse(out.values);
    return out;
}

/// Exact periodic translation f(. - shift) via frequency-space phase factors;
/// shift need not be a grid multiple.  The Nyquist mode is scaled by
/// cos(k_N*shift), which keeps the output real and reduces to the exact
/// circular shift when shift is a grid multiple.
inline Field translate(const Field& f, double shift) {
    if (shift == 0.0) return f;
    const Grid& g = *f.grid;
    auto& ws = detail::workspace_for(g.n());
    ws.forward(f.values);
    auto& spec = ws.spec();
    const auto& k = g.wavenumbers();
    const std::size_t nb = g.n() / 2;
    for (std::size_t j = 1; j < nb; ++j) {
        const double ph = -k[j] * shift;
        spec[j] *= std::complex<double>(std::cos(ph), std::sin(ph));
    }
    spec[nb] *= std::cos(k[nb] * shift);
    Field out(f.grid);
    ws.inverse(out.values);
    return out;
}

/// Mean value (equals the k=0 Fourier coefficient).
inline double mean(const Field& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s / static_cast<double>(f.size());
}

/// Antiderivative F with discrete dF/dx = f and F = 0 at the node nearest
/// x = 0.  The zero-mean part is integrated spectrally (divide by i*k; the
/// Nyquist mode, which carries no derivative information, is dropped); the
/// mean contributes the linear ramp mean(f)*(x - x_ref).  Note the ramp is
/// not periodic: the result is meant for pointwise use, not for further
/// spectral transforms.
inline Field antideriv(const Field& f) {
    const Grid& g = *f.grid;
    auto& ws = detail::workspace_for(g.n());
    ws.forward(f.values);
    auto& spec = ws.spec();
    const auto& k = g.wavenumbers();
    const std::size_t nb = g.n() / 2;
    const double mean_f = spec[0].real();
    spec[0] = 0.0;
    for (std::size_t j = 1; j < nb; ++j)
        spec[j] /= std::complex<double>(0.0, k[j]);
    spec[nb] = 0.0;
    Field out(f.grid);
    ws.inverse(out.values);
    const std::size_t jref = g.node_nearest_zero();
    const double xref = g.node(jref);
    const double pref = out[jref];
    for (std::size_t j = 0; j < g.n(); ++j)
        out[j] += mean_f * (g.node(j) - xref) - pref;
    return out;
}

/// Discrete Sobolev norm |f|_{H^s}: quadrature-consistent, i.e.
/// |f|_{H^0}^2 = dx * sum f^2, with the spectral weight (1+k^2)^{s/2}.
/// Interior bins count twice (real-data half spectrum), DC and Nyquist once.
inline double sobolev_norm(const Field& f, double s) {
    if (s < 0.0) throw std::invalid_argument("sobolev_norm: s must be >= 0");
    const Grid& g = *f.grid;
    auto& ws = detail::workspace_for(g.n());
    const auto& spec = ws.forward(f.values);
    const auto& k = g.wavenumbers();
    const std::size_t nb = g.n() / 2;
    double acc = std::norm(spec[0]);
    for (std::size_t j = 1; j < nb; ++j)
        acc += 2.0 * std::pow(1.0 + k[j] * k[j], s) * std::norm(spec[j]);
    acc += std::pow(1.0 + k[nb] * k[nb], s) * std::norm(spec[nb]);
    return std::sqrt(g.length() * acc);
}

/// 2/3-rule dealiasing: zero every mode with index above n/3.  Off by
/// default throughout the solver (the reference scheme reports none); kept
/// available because O(1) nonlinearities can alias on coarse grids.
inline Field dealias(const Field& f) {
    const Grid& g = *f.grid;
    auto& ws = detail::workspace_for(g.n());
    ws.forward(f.values);
    auto& spec = ws.spec();
    const std::size_t cut = g.n() / 3;
    for (std::size_t j = cut + 1; j <= g.n() / 2; ++j) spec[j] = 0.0;
    Field out(f.grid);
    ws.inverse(out.values);
    return out;
}

/// Trapezoid quadrature over the periodic domain (= dx * sum).
inline double integral(const Field& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s * f.grid->dx();
}

/// Plain vector 2-norm, no dx weight.
inline double l2_raw(const Field& f) {
    double s = 0.0;
    for (double v : f.values) s += v * v;
    return std::sqrt(s);
}

inline double sup_norm(const Field& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

inline double sup_diff(const Field& a, const Field& b) {
    check_same_grid(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// elementwise helpers used all over the flux evaluations

inline Field operator+(Field a, const Field& b) {
    check_same_grid(a, b);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline Field operator-(Field a, const Field& b) {
    check_same_grid(a, b);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

inline Field operator*(Field a, const Field& b) {
    check_same_grid(a, b);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
    return a;
}

inline Field operator*(double c, Field a) {
    for (auto& v : a.values) v *= c;
    return a;
}

inline Field operator+(Field a, double c) {
    for (auto& v : a.values) v += c;
    return a;
}

}  // namespace rigidlid
