#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prophet/control.hpp"
#include "prophet/numerics.hpp"

#include <cmath>

using namespace prophet;

TEST_CASE("mu_bar root and derived constants") {
    const double mu = solve_mu_bar();
    CHECK(std::abs(mu_bar_equation(mu)) < 1e-12);
    CHECK(mu == doctest::Approx(1.9202).epsilon(1e-4));
    CHECK(std::exp(-mu / 2.0) == doctest::Approx(0.3829).epsilon(2e-4));
    CHECK(p_value(mu) == doctest::Approx(0.6534).epsilon(1e-4));
}

TEST_CASE("lower-bound expression and its b -> 1 limit") {
    const double mu = solve_mu_bar();
    CHECK(p_lower_expression(mu, 1.0) == doctest::Approx(p_value(mu)).epsilon(1e-12));
    // continuity at the pole
    CHECK(p_lower_expression(mu, 1.0 - 1e-7) ==
          doctest::Approx(p_lower_expression(mu, 1.0)).epsilon(1e-5));

    // mu = 1, b = 2 evaluates to 1 - 1/e exactly:
    // e^{-1}/(1-e^{-1}) * (e - 2 + e^{-1}) = 1 - 1/e
    CHECK(p_lower_expression(1.0, 2.0) ==
          doctest::Approx(1.0 - 1.0 / std::exp(1.0)).epsilon(1e-12));

    // quadrature oracle of the pre-simplification integral at (mu=1, b=2):
    // a = e^{-1}, integrand in u = sqrt(1-y)
    const double a = std::exp(-1.0);
    const double quad = num::integrate(
        [&](double u) {
            const double s = u;   // sqrt(mu (1-y)) with mu = 1
            if (s <= 0.0) return 0.0;
            return std::exp(-1.0) / (1.0 - a) * std::exp(s) *
                   -std::expm1(2.0 * s * std::log(a)) / (2.0 * s) * 2.0 * u;
        },
        0.0, 1.0, 1e-10);
    CHECK(p_lower_expression(1.0, 2.0) == doctest::Approx(quad).epsilon(1e-8));

    // infimum over b attained at b -> 1
    const double at1 = p_lower_expression(mu, 1.0);
    for (double b : {0.2, 0.5, 0.8, 0.95, 1.05, 1.5, 2.5})
        CHECK(p_lower_expression(mu, b) >= at1 - 1e-12);
}

TEST_CASE("solve_p bundles the saddle point") {
    const auto s = solve_p();
    CHECK(s.alpha == doctest::Approx(0.65337).epsilon(1e-4));
    CHECK(s.mu_bar == doctest::Approx(1.92022).epsilon(1e-4));
    CHECK(s.a_star == doctest::Approx(0.38285).epsilon(1e-4));
    CHECK(std::abs(s.root_residual) < 1e-12);
}

TEST_CASE("upper-bound family touches the optimum at (a_bar, mu_bar)") {
    const auto s = solve_p();
    CHECK(p_upper_value(s.a_star, s.mu_bar) == doctest::Approx(s.alpha).epsilon(1e-7));
    // kappa = mu_bar is a local maximum of the inner supremum
    CHECK(p_upper_value(s.a_star, s.mu_bar) >= p_upper_value(s.a_star, s.mu_bar + 0.05) - 1e-9);
    // kappa below mu is out of the family's domain
    CHECK_THROWS_AS(p_upper_value(0.5, 0.1), std::invalid_argument);
}

TEST_CASE("saddle consistency: sup-inf equals inf-sup equals the closed form") {
    const auto s = solve_p();
    // sup over mu of inf over b of the lower-bound expression
    const auto outer = num::grid_golden_min(
        [&](double mu) {
            const auto inner = num::grid_golden_min(
                [&](double b) { return p_lower_expression(mu, b); }, 0.05, 3.0, 128, 1e-7);
            const double at1 = p_lower_expression(mu, 1.0);
            return -std::min(inner.value, at1);
        },
        1.5, 2.5, 64, 1e-6);
    CHECK(-outer.value == doctest::Approx(s.alpha).epsilon(1e-4));
    CHECK(outer.x == doctest::Approx(s.mu_bar).epsilon(5e-3));

    // inf over a of sup over kappa of the upper-bound family
    const auto inf_a = num::grid_golden_min(
        [&](double a) {
            const double mu = -2.0 * std::log(a);
            const auto sup =
                num::grid_golden_min([&](double kappa) { return -p_upper_value(a, kappa); }, mu,
                                     mu + 2.0, 64, 1e-6);
            return -sup.value;
        },
        0.2, 0.6, 64, 1e-6);
    CHECK(inf_a.value == doctest::Approx(s.alpha).epsilon(1e-4));
    CHECK(inf_a.x == doctest::Approx(s.a_star).epsilon(5e-3));
}

TEST_CASE("q objective spot values") {
    CHECK(q_objective(1.0, 0.317590, 0.455588) == doctest::Approx(0.648957).epsilon(1e-3));
    CHECK(q_objective(0.8, 0.551596, 0.612066) == doctest::Approx(0.633580).epsilon(1e-3));
    // t = 1, a -> 1 closed form: beta ln((1+beta)/beta)
    CHECK(q_objective(0.5, 1.0, 1.0) ==
          doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-9));
    CHECK(q_objective(0.5, 1.0, 1.0) == doctest::Approx(0.549306).epsilon(1e-5));
}

TEST_CASE("solve_q reproduces the reference rows") {
    const auto r10 = solve_q(1.0);
    CHECK(r10.alpha == doctest::Approx(0.648957).epsilon(1e-3));
    CHECK(r10.t_star == doctest::Approx(0.317590).epsilon(5e-3));
    CHECK(r10.a_star == doctest::Approx(0.455588).epsilon(5e-3));
    // the corrected conjectured minimizer tracks the numeric one; the
    // printed variant with (beta+1)^2 does not
    CHECK(r10.conjectured_a_bt == doctest::Approx(r10.a_star).epsilon(1e-3));
    CHECK(std::abs(r10.conjectured_a_b1 - r10.a_star) > 0.2);

    const auto r14 = solve_q(1.4);
    CHECK(r14.alpha == doctest::Approx(0.653368).epsilon(1e-3));
    CHECK(r14.t_star == doctest::Approx(0.025503).epsilon(5e-3));
    CHECK(r14.a_star == doctest::Approx(0.383230).epsilon(5e-3));

    const auto r03 = solve_q(0.3);
    CHECK(r03.alpha == doctest::Approx(0.439901).epsilon(1e-3));
    CHECK(r03.t_star == doctest::Approx(1.0).epsilon(5e-3));
    CHECK(r03.a_star == doctest::Approx(1.0).epsilon(5e-3));

    CHECK_THROWS_AS(solve_q(0.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_q(1.5), std::invalid_argument);
}

TEST_CASE("q approaches p as the budget covers the unconstrained optimum") {
    const auto p = solve_p();
    const auto q = solve_q(1.44);
    CHECK(std::abs(q.alpha - p.alpha) < 1e-3);
}

TEST_CASE("alpha is non-decreasing in beta") {
    double prev = 0.0;
    for (double beta = 0.1; beta <= 1.41; beta += 0.1) {
        const auto s = solve_q(beta);
        CHECK(s.alpha >= prev - 1e-9);
        prev = s.alpha;
    }
}
