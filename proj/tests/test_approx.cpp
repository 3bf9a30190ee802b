#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rigidlid/approx.hpp"
#include "rigidlid/diagnostics.hpp"
#include "rigidlid/validation.hpp"

using namespace rigidlid;
using Catch::Matchers::WithinAbs;

namespace {

Field bump(const GridPtr& g, double amp, double width, double center = 0.0) {
    return sample(g, [=](double x) {
        const double y = (x - center) / width;
        return amp * std::exp(-y * y);
    });
}

SolveSpec spec_to(double T, double tol = 1e-8, std::size_t samples = 5) {
    SolveSpec s;
    s.t_end = T;
    s.rel_tol = s.abs_tol = tol;
    s.sample_times = SolveSpec::linspace(0.0, T, samples);
    return s;
}

/// Normalized-frame params for the reference experiment at given gamma.
Params norm_params(double gamma = 0.9, double delta = 0.5) {
    return Params{gamma, delta, 1.0, derive_rho(gamma, delta)};
}

}  // namespace

TEST_CASE("rigid-lid solution: zero data stays zero, bump data conserves mass") {
    const auto g = make_grid(-100.0, 100.0, 512);
    const Params p = norm_params();
    {
        const Trajectory t = rigid_lid_solution(Field(g), Field(g), p, spec_to(1.0));
        REQUIRE(t.status == SolveStatus::completed);
        for (const auto& s : t.states)
            for (double v : s) REQUIRE(v == 0.0);
    }
    {
        Field eta0 = bump(g, 0.5, 2.0);
        Field v0 = bump(g, -1.0 / 6.0, 2.0);
        const Trajectory t = rigid_lid_solution(eta0, v0, p, spec_to(4.0, 1e-8, 9));
        REQUIRE(t.status == SolveStatus::completed);
        double m0 = 0.0, worst = 0.0;
        for (std::size_t i = 0; i < t.times.size(); ++i) {
            const StateRL s = unpack_rl(g, t.states[i]);
            const double m = integral(s.eta);
            if (i == 0) m0 = m;
            worst = std::max(worst, std::abs(m - m0));
            REQUIRE(check_hyperbolicity_rl(s, p, 0.0).margin > 0.0);
        }
        REQUIRE(worst <= 1e-9);
    }
}

TEST_CASE("slow surface corrector closed-form values") {
    const auto g = make_grid(-10.0, 10.0, 64);
    const Params p = norm_params();  // delta = 0.5
    {
        Field z = slow_corrector_zeta1(Field(g), Field(g), p);
        REQUIRE(sup_norm(z) == 0.0);
    }
    {
        Field v = sample(g, [](double) { return 1.0; });
        Field z = slow_corrector_zeta1(Field(g), v, p);
        // -(1*2)/(1+2)^2 = -2/9
        REQUIRE_THAT(z[0], WithinAbs(-2.0 / 9.0, 1e-15));
        REQUIRE(sup_diff(z, sample(g, [](double) { return -2.0 / 9.0; })) <= 1e-15);
    }
    {
        Field eta = bump(g, 0.4, 2.0);
        Field z = slow_corrector_zeta1(eta, Field(g), p);
        Field expected(g);
        for (std::size_t i = 0; i < g->n(); ++i)
            expected[i] = -(eta[i] + 0.5 * p.delta * eta[i] * eta[i]);
        REQUIRE(sup_diff(z, expected) <= 1e-15);
    }
}

TEST_CASE("simple momentum corrector is the exact linear scaling") {
    const auto g = make_grid(-10.0, 10.0, 64);
    const Params p = norm_params();
    REQUIRE(sup_norm(slow_corrector_m_simple(Field(g), p)) == 0.0);
    Field one = sample(g, [](double) { return 1.0; });
    REQUIRE_THAT(slow_corrector_m_simple(one, p)[0], WithinAbs(1.0 / 3.0, 1e-15));
    Field v = bump(g, 0.7, 2.0);
    Field a = slow_corrector_m_simple(v, p);
    Field b = slow_corrector_m_simple(2.0 * v, p);
    REQUIRE(sup_diff(b, 2.0 * a) == 0.0);
}

TEST_CASE("full momentum corrector: derivative of the integral term round-trips") {
    const auto g = make_grid(-50.0, 50.0, 512);
    const Params p = norm_params();
    Field eta = bump(g, 0.3, 2.0, 1.0);
    Field v = bump(g, -0.2, 2.5, -1.0);
    REQUIRE(sup_norm(slow_corrector_m_full(Field(g), Field(g), p)) == 0.0);

    const Field dz = slow_corrector_zeta1_dt(eta, v, p);
    const Field integral_term = -1.0 * antideriv(dz);
    // remove the ramp, differentiate the periodic part spectrally, add the
    // mean back: this is the discrete derivative of the anchored integral
    const double m = mean(dz);
    const double xref = g->node(g->node_nearest_zero());
    Field periodic = integral_term;
    for (std::size_t i = 0; i < g->n(); ++i) periodic[i] += m * (g->node(i) - xref);
    Field ddx = deriv(periodic) + (-m);
    REQUIRE(sup_diff(ddx, -1.0 * dz) <= 1e-9);
}

TEST_CASE("momentum corrector variants differ at second order in the amplitude") {
    const auto g = make_grid(-50.0, 50.0, 512);
    const Params p = norm_params(0.99);  // small rho so the quadratic term dominates
    // the anchored antiderivative fixes the full corrector's gauge at x = 0,
    // so the variants agree only up to a spatial constant; measure the
    // difference with the constant removed (pinned at the far boundary,
    // where every field vanishes)
    auto diff_norm = [&](double amp) {
        Field eta = bump(g, 0.5 * amp, 2.0);
        Field v = bump(g, -amp / 3.0, 2.0);
        Field d = slow_corrector_m_full(eta, v, p) - slow_corrector_m_simple(v, p);
        const double gauge = d[0];
        for (auto& x : d.values) x -= gauge;
        return sobolev_norm(d, 0.0);
    };
    const double r = diff_norm(1.0) / diff_norm(0.5);
    REQUIRE(r > 3.3);
    REQUIRE(r < 4.7);
}

TEST_CASE("linear fast corrector reconstructs the data at t=0") {
    const auto g = make_grid(-100.0, 100.0, 512);
    const Params p = norm_params();
    Field za = bump(g, 0.3, 2.0);
    Field m0 = bump(g, 1.0, 2.0);
    const StateV inc = fast_corrector_linear(za, m0, p, 0.0);
    REQUIRE(sup_diff(inc.zeta1, za) <= 1e-14);
    REQUIRE(sup_diff(inc.m, m0) <= 1e-14);
    REQUIRE(sup_norm(inc.zeta2) == 0.0);
    REQUIRE(sup_norm(inc.us) == 0.0);
}

TEST_CASE("linear fast corrector of zero data is zero at all times") {
    const auto g = make_grid(-100.0, 100.0, 256);
    const Params p = norm_params();
    for (double t : {0.0, 1.0, 3.7}) {
        const StateV inc = fast_corrector_linear(Field(g), Field(g), p, t);
        for (std::size_t c = 0; c < 4; ++c) REQUIRE(sup_norm(inc.component(c)) == 0.0);
    }
}

TEST_CASE("linear fast corrector splits a pure surface bump into two half pulses") {
    const auto g = make_grid(-100.0, 100.0, 512);
    const Params p = norm_params();
    Field za = bump(g, 0.4, 2.0);
    const double t = 0.8;
    const double shift = p.c_fast() * t / p.rho();
    const StateV inc = fast_corrector_linear(za, Field(g), p, t);
    Field expected = 0.5 * translate(za, shift) + 0.5 * translate(za, -shift);
    REQUIRE(sup_diff(inc.zeta1, expected) <= 1e-12);
}

TEST_CASE("burgers fast mode: conservation, max principle, oracle") {
    const auto g = make_grid(-100.0, 100.0, 1024);
    const Params p = norm_params();
    const double c = p.c_fast();
    Field za(g);
    Field m0 = bump(g, 1.0, 2.0);  // ill-prepared normalized amplitude
    const SolveSpec spec = spec_to(4.0, 1e-9, 9);
    const BurgersFast b = fast_corrector_burgers(za, m0, p, spec);

    // divergence form conserves the integral of each wave
    for (const Trajectory* traj : {&b.w_plus, &b.w_minus}) {
        double q0 = 0.0;
        for (std::size_t i = 0; i < traj->times.size(); ++i) {
            const double q = integral(Field(g, traj->states[i]));
            if (i == 0) q0 = q;
            REQUIRE(std::abs(q - q0) <= 1e-9);
        }
    }

    // max principle up to the integration tolerance
    const double max0 = sup_norm(Field(g, b.w_plus.states.front()));
    for (const auto& s : b.w_plus.states)
        REQUIRE(sup_norm(Field(g, s)) <= max0 + 1e-6);

    // method of characteristics at the final time
    const double amp = 0.5 / c;  // w+(0) = m0/(2c)
    const auto line = burgers_characteristics_oracle(g, amp, 2.0, 1.5 / c, 4.0, 1e-9, 1e-6);
    INFO(line.name << " value=" << line.value);
    CHECK(line.pass());
}

TEST_CASE("burgers with the nonlinearity off matches the linear transport") {
    const auto g = make_grid(-100.0, 100.0, 512);
    const Params p = norm_params();
    Field za = bump(g, 0.2, 2.0);
    Field m0 = bump(g, 0.5, 2.5);
    const double T = 2.0;
    const BurgersFast b =
        fast_corrector_burgers(za, m0, p, spec_to(T, 1e-10, 3), /*nonlinearity=*/0.0);
    const StateV lin = fast_corrector_linear(za, m0, p, T);
    const StateV got = b.evaluate(T);
    REQUIRE(sup_diff(got.zeta1, lin.zeta1) <= 1e-8);
    REQUIRE(sup_diff(got.m, lin.m) <= 1e-8);
}

TEST_CASE("burgers rejects a window that reaches the shock horizon") {
    const auto g = make_grid(-100.0, 100.0, 512);
    const Params p = norm_params();
    Field za(g);
    Field m0 = bump(g, 40.0, 1.0);  // steep: horizon well under T
    REQUIRE_THROWS_AS(fast_corrector_burgers(za, m0, p, spec_to(4.0)), std::domain_error);
}

TEST_CASE("assembled approximants telescope to the initial data") {
    const auto g = make_grid(-100.0, 100.0, 512);
    const Params p = norm_params();
    StateV v0(g);
    v0.zeta1 = bump(g, 0.05, 2.0);
    v0.zeta2 = bump(g, 0.5, 2.0);
    v0.us = bump(g, -1.0 / 6.0, 2.0);
    v0.m = bump(g, 1.0, 2.0);
    const SolveSpec spec = spec_to(1.0, 1e-8, 3);

    for (ApproximantKind k : {ApproximantKind::improved_wp, ApproximantKind::ip_improved}) {
        const Approximant a = assemble(k, v0, p, spec);
        const StateV at0 = a.evaluate(0.0);
        for (std::size_t c = 0; c < 4; ++c) {
            INFO("kind=" << to_string(k) << " component=" << c);
            REQUIRE(sup_diff(at0.component(c), v0.component(c)) <= 1e-14);
        }
    }
    {
        const Approximant a = assemble(ApproximantKind::rl_only, v0, p, spec);
        const StateV at0 = a.evaluate(0.0);
        REQUIRE(sup_norm(at0.zeta1) == 0.0);
        REQUIRE(sup_norm(at0.m) == 0.0);
        REQUIRE(sup_diff(at0.zeta2, v0.zeta2) == 0.0);
        REQUIRE(sup_diff(at0.us, v0.us) == 0.0);
    }
}

TEST_CASE("well-prepared improved approximant carries only the corrector-induced fast mode") {
    const auto g = make_grid(-100.0, 100.0, 512);
    const Params p = norm_params();
    StateV v0(g);
    v0.zeta2 = bump(g, 0.5, 2.0);
    v0.us = bump(g, -1.0 / 6.0, 2.0);
    const SolveSpec spec = spec_to(1.0, 1e-8, 3);
    const Approximant a = assemble(ApproximantKind::improved_wp, v0, p, spec);

    // with zeta1(0) = m(0) = 0 the whole fast mode is the split corrector
    Field expected_adj = (-p.rho()) * slow_corrector_zeta1(v0.zeta2, v0.us, p);
    REQUIRE(sup_diff(a.zeta1_adj, expected_adj) <= 1e-15);
    REQUIRE(sup_diff(Field(g, a.burgers.w_plus.states.front()), 0.5 * expected_adj) <= 1e-15);
    REQUIRE(sup_diff(Field(g, a.burgers.w_minus.states.front()), 0.5 * expected_adj) <= 1e-15);

    // the transported fast part stays two half-amplitude counter-propagating
    // pulses up to the O(rho^3) self-steepening of the Burgers wave
    const double t = 1.0;
    const double shift = p.c_fast() * t / p.rho();
    const StateV at = a.evaluate(t);
    const StateRL rl = unpack_rl(g, a.rl.at(t));
    Field fast = at.zeta1 - p.rho() * slow_corrector_zeta1(rl.eta, rl.v, p);
    Field two_pulses = 0.5 * translate(expected_adj, shift) + 0.5 * translate(expected_adj, -shift);
    REQUIRE(sup_diff(fast, two_pulses) <= 0.02 * sup_norm(expected_adj));
    // and exactly those pulses when the transport is linear
    const StateV lin = fast_corrector_linear(a.zeta1_adj, a.m0, p, t);
    REQUIRE(sup_diff(lin.zeta1, two_pulses) <= 1e-12);
}

TEST_CASE("fast and slow parts separate spatially by the final time") {
    const auto g = make_grid(-100.0, 100.0, 1024);
    const double gamma = 0.975;  // rho ~ 0.13
    const Params p = norm_params(gamma);
    REQUIRE(p.rho() <= 0.15);
    StateV v0(g);
    v0.zeta2 = bump(g, 0.5, 2.0);
    v0.us = bump(g, -1.0 / 6.0, 2.0);
    v0.m = bump(g, 1.0, 2.0);
    const double T = 4.0;
    const Approximant a =
        assemble(ApproximantKind::ip_improved, v0, p, spec_to(T, 1e-8, 5));

    const StateV fast = a.burgers.evaluate(T);
    const StateRL rl = unpack_rl(g, a.rl.at(T));

    auto mass_fraction_inside = [&](const Field& f) {
        double inside = 0.0, total = 0.0;
        for (std::size_t i = 0; i < g->n(); ++i) {
            const double q = f[i] * f[i];
            total += q;
            if (std::abs(g->node(i)) <= 20.0) inside += q;
        }
        return total > 0.0 ? inside / total : 0.0;
    };
    // fast corrector mass lives outside [-20, 20]
    REQUIRE(mass_fraction_inside(fast.zeta1) <= 0.01);
    REQUIRE(mass_fraction_inside(fast.m) <= 0.01);
    // rigid-lid mass stays inside
    REQUIRE(mass_fraction_inside(rl.eta) >= 0.99);
    REQUIRE(mass_fraction_inside(rl.v) >= 0.99);
}
