#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rigidlid/spectral.hpp"

using namespace rigidlid;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("deriv is exact on a resolved Fourier mode") {
    const auto g = make_grid(0.0, 1.0, 64);
    const double L = g->length();
    Field f = sample(g, [&](double x) { return std::sin(2.0 * kPi * x / L); });
    Field expected = sample(g, [&](double x) {
        return (2.0 * kPi / L) * std::cos(2.0 * kPi * x / L);
    });
    REQUIRE(sup_diff(deriv(f), expected) <= 1e-12);
}

TEST_CASE("deriv annihilates constants") {
    const auto g = make_grid(-3.0, 5.0, 32);
    Field f = sample(g, [](double) { return 4.25; });
    REQUIRE(sup_norm(deriv(f)) <= 1e-13);
}

TEST_CASE("deriv of a Gaussian matches the analytic derivative") {
    const auto g = make_grid(-100.0, 100.0, 2000);
    Field f = sample(g, [](double x) { return std::exp(-(x / 2.0) * (x / 2.0)); });
    Field expected = sample(g, [](double x) {
        return -(x / 2.0) * std::exp(-(x / 2.0) * (x / 2.0));
    });
    REQUIRE(sup_diff(deriv(f), expected) <= 1e-10);
}

TEST_CASE("deriv rejects non-finite input") {
    const auto g = make_grid(0.0, 1.0, 16);
    Field f(g);
    f[3] = std::numeric_limits<double>::quiet_NaN();
    REQUIRE_THROWS_AS(deriv(f), std::invalid_argument);
}

TEST_CASE("translate by zero and by a full period is the identity") {
    const auto g = make_grid(-10.0, 10.0, 128);
    Field f = sample(g, [](double x) { return std::exp(-x * x) + 0.3 * std::sin(x); });
    REQUIRE(sup_diff(translate(f, 0.0), f) == 0.0);
    REQUIRE(sup_diff(translate(f, g->length()), f) <= 1e-12);
}

TEST_CASE("translate of a Gaussian by a non-grid shift matches re-evaluation") {
    const auto g = make_grid(-100.0, 100.0, 2000);
    Field f = sample(g, [](double x) { return std::exp(-(x / 2.0) * (x / 2.0)); });
    const double shift = 3.7 * g->dx();
    Field expected = sample(g, [&](double x) {
        const double y = x - shift;
        return std::exp(-(y / 2.0) * (y / 2.0));
    });
    REQUIRE(sup_diff(translate(f, shift), expected) <= 1e-10);
}

TEST_CASE("deriv and translate commute") {
    const auto g = make_grid(-20.0, 20.0, 256);
    Field f = sample(g, [](double x) { return std::exp(-x * x / 4.0); });
    const double s = 1.2345;
    REQUIRE(sup_diff(deriv(translate(f, s)), translate(deriv(f), s)) <= 1e-12);
}

TEST_CASE("antideriv of zero is zero and of one is the anchored ramp") {
    const auto g = make_grid(-10.0, 10.0, 64);
    REQUIRE(sup_norm(antideriv(Field(g))) == 0.0);
    Field one = sample(g, [](double) { return 1.0; });
    const double xref = g->node(g->node_nearest_zero());
    Field ramp = sample(g, [&](double x) { return x - xref; });
    REQUIRE(sup_diff(antideriv(one), ramp) <= 1e-12);
}

TEST_CASE("antideriv of a resolved cosine matches the closed form") {
    const auto g = make_grid(-10.0, 10.0, 128);
    const double L = g->length();
    const double k = 2.0 * kPi / L;
    Field f = sample(g, [&](double x) { return std::cos(k * x); });
    const double xref = g->node(g->node_nearest_zero());
    Field expected = sample(g, [&](double x) {
        return (std::sin(k * x) - std::sin(k * xref)) / k;
    });
    REQUIRE(sup_diff(antideriv(f), expected) <= 1e-12);
}

TEST_CASE("deriv after antideriv returns the input for smooth data") {
    const auto g = make_grid(-30.0, 30.0, 512);
    // zero-mean part round-trips spectrally; the mean rides on the ramp,
    // whose derivative is added back analytically
    Field f = sample(g, [](double x) { return std::exp(-x * x / 9.0) * (1.0 + 0.5 * x); });
    Field F = antideriv(f);
    const double m = mean(f);
    const double xref = g->node(g->node_nearest_zero());
    Field periodic = F;
    for (std::size_t i = 0; i < g->n(); ++i) periodic[i] -= m * (g->node(i) - xref);
    Field recovered = deriv(periodic) + m;
    REQUIRE(sup_diff(recovered, f) <= 1e-10);
}

TEST_CASE("sobolev norm basics") {
    const auto g = make_grid(0.0, 1.0, 64);
    REQUIRE(sobolev_norm(Field(g), 0.0) == 0.0);
    Field one = sample(g, [](double) { return 1.0; });
    REQUIRE_THAT(sobolev_norm(one, 0.0), WithinAbs(1.0, 1e-14));
    REQUIRE_THROWS_AS(sobolev_norm(one, -1.0), std::invalid_argument);
}

TEST_CASE("sobolev norm of a single mode follows the Parseval formula") {
    const auto g = make_grid(-5.0, 5.0, 128);
    const double L = g->length();
    const double k = 2.0 * kPi * 3.0 / L;
    Field f = sample(g, [&](double x) { return std::sin(k * x); });
    const double expected_sq = (1.0 + k * k) * (L / 2.0);
    const double got = sobolev_norm(f, 1.0);
    REQUIRE_THAT(got * got, WithinAbs(expected_sq, 1e-10 * expected_sq));
}

TEST_CASE("H1 norm decomposes into H0 norms of the field and its derivative") {
    const auto g = make_grid(-15.0, 15.0, 256);
    // band-limited: a few low modes only
    Field f = sample(g, [&](double x) {
        const double k0 = 2.0 * kPi / g->length();
        return std::sin(3.0 * k0 * x) + 0.4 * std::cos(7.0 * k0 * x);
    });
    const double h0 = sobolev_norm(f, 0.0);
    const double h0d = sobolev_norm(deriv(f), 0.0);
    const double h1 = sobolev_norm(f, 1.0);
    REQUIRE_THAT(h0 * h0 + h0d * h0d, WithinAbs(h1 * h1, 1e-12 * h1 * h1));
}

TEST_CASE("translate preserves sobolev norms") {
    const auto g = make_grid(-15.0, 15.0, 256);
    Field f = sample(g, [](double x) { return std::exp(-x * x / 2.0); });
    for (double s : {0.0, 1.0, 2.5}) {
        const double a = sobolev_norm(f, s);
        const double b = sobolev_norm(translate(f, 0.77), s);
        REQUIRE_THAT(b, WithinAbs(a, 1e-12 * std::max(1.0, a)));
    }
}

TEST_CASE("dealias keeps band-limited fields and zeros fields exactly") {
    const auto g = make_grid(0.0, 2.0 * kPi, 96);
    Field low = sample(g, [](double x) { return std::sin(5.0 * x) + std::cos(2.0 * x); });
    REQUIRE(sup_diff(dealias(low), low) <= 1e-13);
    REQUIRE(sup_norm(dealias(Field(g))) == 0.0);
}

TEST_CASE("dealias removes exactly the Parseval tail") {
    const auto g = make_grid(0.0, 2.0 * kPi, 96);
    // deterministic broadband signal
    Field f(g);
    for (std::size_t i = 0; i < g->n(); ++i)
        f[i] = std::sin(31.7 * static_cast<double>(i)) + 0.3 * std::cos(7.1 * static_cast<double>(i * i % 97));
    Field fd = dealias(f);
    const double total = sobolev_norm(f, 0.0);
    const double kept = sobolev_norm(fd, 0.0);
    const double removed = sobolev_norm(f - fd, 0.0);
    REQUIRE_THAT(kept * kept + removed * removed, WithinAbs(total * total, 1e-10));
}
