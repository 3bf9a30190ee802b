#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace rigidlid {

/// Time-integration request: window, tolerances, requested sample times and
/// step-control constants.
struct SolveSpec {
    double t0 = 0.0;
    double t_end = 1.0;
    double rel_tol = 1e-8;
    double abs_tol = 1e-8;
    std::vector<double> sample_times;  ///< sorted, within [t0, t_end]
    std::size_t max_steps = 10'000'000;
    double safety = 0.9;
    double min_scale = 0.2;   ///< largest allowed step shrink per step
    double max_scale = 10.0;  ///< largest allowed step growth per step

    void check() const {
        if (!(t_end > t0)) throw std::invalid_argument("SolveSpec: t_end <= t0");
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw std::invalid_argument("SolveSpec: tolerances must be positive");
        double prev = t0;
        for (double t : sample_times) {
            if (t < t0 - 1e-12 || t > t_end + 1e-12 || t < prev)
                throw std::invalid_argument("SolveSpec: sample times must be sorted in [t0,t_end]");
            prev = t;
        }
    }

    static std::vector<double> linspace(double a, double b, std::size_t count) {
        std::vector<double> t(count);
        for (std::size_t i = 0; i < count; ++i)
            t[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
        t.back() = b;
        return t;
    }
};

enum class SolveStatus { completed, diverged, condition_lost, step_underflow };

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::completed: return "completed";
        case SolveStatus::diverged: return "diverged";
        case SolveStatus::condition_lost: return "condition_lost";
        default: return "step_underflow";
    }
}

/// Time-sampled solution plus solver metadata.  Samples are produced by the
/// dense-output interpolant at the requested times; on early termination the
/// sample list is truncated at the failure time.
struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    SolveStatus status = SolveStatus::completed;
    double t_fail = 0.0;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    double dt_min = 0.0;
    double dt_max = 0.0;

    const std::vector<double>& at(double t) const {
        for (std::size_t i = 0; i < times.size(); ++i)
            if (std::abs(times[i] - t) <= 1e-9 * std::max(1.0, std::abs(t)))
                return states[i];
        throw std::out_of_range("Trajectory::at: time was not sampled");
    }
};

using Rhs = std::function<void(double, const std::vector<double>&, std::vector<double>&)>;
/// Per accepted step; returning false stops the run with condition_lost.
using StepMonitor = std::function<bool(double, const std::vector<double>&)>;

namespace detail {

// Dormand-Prince 5(4) tableau, FSAL.
namespace dp {
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
// y1 - yhat1 (5th minus embedded 4th order)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// 4th-order continuous extension
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
}  // namespace dp

inline bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace detail

/// Adaptive Dormand-Prince 5(4) integration with PI step control and dense
/// output.  The error norm is a mixed absolute/relative RMS over all entries;
/// sample states come from the 4th-order interpolant, so requested times do
/// not constrain the step sequence.  Fully deterministic: no randomness,
/// fixed reduction order.
inline Trajectory integrate(const Rhs& rhs, const std::vector<double>& y0,
                            const SolveSpec& spec, const StepMonitor& monitor = {}) {
    using namespace detail::dp;
    spec.check();
    const std::size_t n = y0.size();
    Trajectory out;
    if (!detail::all_finite(y0)) {
        out.status = SolveStatus::diverged;
        out.t_fail = spec.t0;
        return out;
    }

    std::vector<double> y = y0, k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n),
                        ynew(n);
    double t = spec.t0;
    const double span = spec.t_end - spec.t0;

    std::size_t next_sample = 0;
    auto emit_initial_samples = [&]() {
        while (next_sample < spec.sample_times.size() &&
               spec.sample_times[next_sample] <= spec.t0) {
            out.times.push_back(spec.sample_times[next_sample]);
            out.states.push_back(y0);
            ++next_sample;
        }
    };
    emit_initial_samples();

    rhs(t, y, k1);
    if (!detail::all_finite(k1)) {
        out.status = SolveStatus::diverged;
        out.t_fail = t;
        return out;
    }

    // initial step: small fraction of the span refined by the rhs magnitude
    double h;
    {
        double d0 = 0.0, d1n = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sc = spec.abs_tol + spec.rel_tol * std::abs(y[i]);
            d0 += (y[i] / sc) * (y[i] / sc);
            d1n += (k1[i] / sc) * (k1[i] / sc);
        }
        d0 = std::sqrt(d0 / static_cast<double>(n));
        d1n = std::sqrt(d1n / static_cast<double>(n));
        h = (d1n > 1e-10) ? 0.01 * d0 / d1n : 1e-6 * span;
        h = std::min(std::max(h, 1e-10 * span), 0.1 * span);
    }

    const double h_floor = 1e-14 * std::max(1.0, std::abs(span));
    const double beta = 0.04, expo = 0.2 - beta * 0.75;
    double err_old = 1e-4;
    out.dt_min = span;

    auto weighted_err = [&](const std::vector<double>& ya, const std::vector<double>& yb,
                            const std::vector<double>& e) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sc =
                spec.abs_tol + spec.rel_tol * std::max(std::abs(ya[i]), std::abs(yb[i]));
            const double q = e[i] / sc;
            acc += q * q;
        }
        return std::sqrt(acc / static_cast<double>(n));
    };

    for (std::size_t step = 0; step < spec.max_steps; ++step) {
        if (t >= spec.t_end) break;
        bool last = false;
        if (h >= spec.t_end - t - h_floor) {
            h = spec.t_end - t;
            last = true;
        }
        if (h < h_floor) {
            out.status = SolveStatus::step_underflow;
            out.t_fail = t;
            return out;
        }

        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        rhs(t + c2 * h, ytmp, k2);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * h, ytmp, k3);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * h, ytmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * h, ytmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] +
                      h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(t + h, ytmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] +
                      h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        rhs(t + h, ynew, k7);

        if (!detail::all_finite(ynew) || !detail::all_finite(k7)) {
            out.status = SolveStatus::diverged;
            out.t_fail = t;
            return out;
        }

        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                           e7 * k7[i]);
        const double err = weighted_err(y, ynew, ytmp);

        if (err <= 1.0) {
            // dense output over (t, t+h]
            while (next_sample < spec.sample_times.size() &&
                   spec.sample_times[next_sample] <= t + h + 1e-14 * std::abs(span)) {
                const double ts = std::min(spec.sample_times[next_sample], t + h);
                const double th = (ts - t) / h, mh = 1.0 - th;
                out.times.push_back(spec.sample_times[next_sample]);
                auto& ys = out.states.emplace_back(n);
                for (std::size_t i = 0; i < n; ++i) {
                    const double ydiff = ynew[i] - y[i];
                    const double bspl = h * k1[i] - ydiff;
                    const double r5 = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                           d6 * k6[i] + d7 * k7[i]);
                    ys[i] = y[i] + th * (ydiff + mh * (bspl + th * ((ydiff - h * k7[i] - bspl) +
                                                                    mh * r5)));
                }
                ++next_sample;
            }

            t = last ? spec.t_end : t + h;
            y.swap(ynew);
            k1.swap(k7);  // FSAL
            ++out.accepted;
            out.dt_min = std::min(out.dt_min, h);
            out.dt_max = std::max(out.dt_max, h);

            if (monitor && !monitor(t, y)) {
                out.status = SolveStatus::condition_lost;
                out.t_fail = t;
                return out;
            }

            const double fac11 = std::pow(std::max(err, 1e-16), expo);
            double fac = fac11 / std::pow(err_old, beta);
            fac = std::max(1.0 / spec.max_scale, std::min(1.0 / spec.min_scale, fac / spec.safety));
            h = h / fac;
            err_old = std::max(err, 1e-4);
        } else {
            ++out.rejected;
            const double fac11 = std::pow(err, expo);
            h = h / std::min(1.0 / spec.min_scale, fac11 / spec.safety);
        }
    }

    if (t < spec.t_end - 1e-12 * std::abs(span)) {
        out.status = SolveStatus::step_underflow;  // max_steps exhausted
        out.t_fail = t;
    }
    return out;
}

}  // namespace rigidlid
