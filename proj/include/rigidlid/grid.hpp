#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <vector>

namespace rigidlid {

/// Uniform periodic grid on [x_min, x_max): n nodes, spacing dx, node j at
/// x_min + j*dx.  The right endpoint is identified with the left one.
/// Wavenumbers follow the usual real-FFT layout k_j = 2*pi*j/L, j = 0..n/2.
class Grid {
  public:
    Grid(double x_min, double x_max, std::size_t n)
        : x_min_(x_min), x_max_(x_max), n_(n) {
        if (!(x_max > x_min)) throw std::invalid_argument("Grid: x_max <= x_min");
        if (n < 4 || n % 2 != 0)
            throw std::invalid_argument("Grid: n must be even and >= 4");
        dx_ = (x_max - x_min) / static_cast<double>(n);
        k_.resize(n / 2 + 1);
        const double k0 = 2.0 * pi() / length();
        for (std::size_t j = 0; j <= n / 2; ++j) k_[j] = k0 * static_cast<double>(j);
    }

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    std::size_t n() const { return n_; }
    double dx() const { return dx_; }
    double length() const { return x_max_ - x_min_; }
    double node(std::size_t j) const { return x_min_ + dx_ * static_cast<double>(j); }

    /// Non-negative wavenumbers, one per real-FFT bin (last entry = Nyquist).
    const std::vector<double>& wavenumbers() const { return k_; }

    /// Index of the grid node nearest to x = 0 (reference point for the
    /// spectral antiderivative).
    std::size_t node_nearest_zero() const {
        double t = -x_min_ / dx_;
        if (t < 0.0) t = 0.0;
        auto j = static_cast<std::size_t>(std::llround(t));
        return j >= n_ ? n_ - 1 : j;
    }

    bool operator==(const Grid& o) const {
        return x_min_ == o.x_min_ && x_max_ == o.x_max_ && n_ == o.n_;
    }

    static constexpr double pi() { return 3.141592653589793238462643383279502884; }

  private:
    double x_min_, x_max_;
    std::size_t n_;
    double dx_;
    std::vector<double> k_;
};

using GridPtr = std::shared_ptr<const Grid>;

inline GridPtr make_grid(double x_min, double x_max, std::size_t n) {
    return std::make_shared<const Grid>(x_min, x_max, n);
}

/// Real scalar samples on the nodes of a Grid.
struct Field {
    GridPtr grid;
    std::vector<double> values;

    Field() = default;
    explicit Field(GridPtr g, double fill = 0.0)
        : grid(std::move(g)), values(grid->n(), fill) {}
    Field(GridPtr g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
        if (values.size() != grid->n())
            throw std::invalid_argument("Field: value count does not match grid");
    }

    std::size_t size() const { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }

    bool finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

/// Sample f(x) on every node.
template <class F>
Field sample(const GridPtr& g, F&& f) {
    Field out(g);
    for (std::size_t j = 0; j < g->n(); ++j) out[j] = f(g->node(j));
    return out;
}

inline void check_same_grid(const Field& a, const Field& b) {
    if (!a.grid || !b.grid || !(*a.grid == *b.grid))
        throw std::invalid_argument("fields live on different grids");
}

}  // namespace rigidlid
