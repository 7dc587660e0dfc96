#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prophet/control.hpp"
#include "prophet/numerics.hpp"
#include "prophet/profiles.hpp"

#include <cmath>

using namespace prophet;

TEST_CASE("three-step schedule values") {
    const auto s3 = three_step_schedule(3);
    CHECK(s3.f == std::vector<long long>{2, 3, 1});
    const auto s6 = three_step_schedule(6);
    CHECK(s6.f == std::vector<long long>{5, 5, 7, 7, 3, 3});
    CHECK_THROWS_AS(three_step_schedule(4), std::invalid_argument);
    CHECK_THROWS_AS(three_step_schedule(0), std::invalid_argument);

    // a budget of n samples always suffices; the tight requirement is n-1
    for (int n : {3, 6, 30, 300}) {
        const auto s = three_step_schedule(n);
        CHECK(s.k_required == n - 1);
        CHECK(s.k_required <= n);
    }
}

TEST_CASE("unconstrained opt profile") {
    const double mu = solve_mu_bar();
    const OptProfile opt(mu);

    CHECK(unconstrained_opt_g(1.0, mu) == 0.0);
    CHECK(unconstrained_opt_g(0.0, mu) == doctest::Approx(2.0 / std::sqrt(mu)).epsilon(1e-15));
    // halves at y = 0.75 since sqrt(1 - 0.75) = 1/2
    CHECK(unconstrained_opt_g(0.75, mu) ==
          doctest::Approx(0.5 * unconstrained_opt_g(0.0, mu)).epsilon(1e-12));
    CHECK(opt.g0() == doctest::Approx(1.44329).epsilon(1e-4));

    // strictly decreasing
    double prev = opt.g(0.0);
    for (double y = 0.01; y <= 1.0; y += 0.01) {
        CHECK(opt.g(y) < prev);
        prev = opt.g(y);
    }
}

TEST_CASE("constrained profile shape") {
    const double beta = 1.0, t = 0.317590;
    const ConstrainedProfile c(beta, t);

    CHECK(constrained_g(t, beta, t) == doctest::Approx(beta + t).epsilon(1e-12));
    CHECK(constrained_g(1.0, beta, t) == 0.0);
    CHECK(constrained_g(0.6, beta, t) == doctest::Approx(1.0087594).epsilon(1e-6));
    // t = 1 guard: linear branch everywhere
    CHECK(constrained_g(0.9, 0.5, 1.0) == doctest::Approx(1.4).epsilon(1e-12));

    // rises with slope 1, then decreases
    CHECK(c.g(0.1) == doctest::Approx(beta + 0.1));
    double prev = c.g(t);
    for (double y = t + 0.01; y < 1.0; y += 0.01) {
        CHECK(c.g(y) < prev);
        prev = c.g(y);
    }
}

TEST_CASE("profile h matches numeric integration of 1/g") {
    const double mu = solve_mu_bar();
    const OptProfile opt(mu);
    const ConstrainedProfile con(1.0, 0.317590);
    const ThreeStepProfile ts;
    const ConstantProfile cst(0.8);

    for (const Profile* p : {static_cast<const Profile*>(&opt), static_cast<const Profile*>(&con),
                             static_cast<const Profile*>(&ts), static_cast<const Profile*>(&cst)}) {
        for (double y : {0.1, 0.3333, 0.5, 0.7, 0.9, 0.99}) {
            const double direct = num::integrate(
                [&](double z) { return 1.0 / p->g(z); }, 0.0, y, p->knots(), 1e-11);
            CHECK(p->h(y) == doctest::Approx(direct).epsilon(1e-7));
        }
    }
}

TEST_CASE("constrained h agrees with its closed-form display") {
    // h(y) = ln(b+t) - ln(b) + 2(y-1)/sqrt((y-1)(b+t)^2/(t-1)) - 2(t-1)/sqrt((b+t)^2)
    const double beta = 0.8, t = 0.551596;
    const ConstrainedProfile c(beta, t);
    for (double y = t + 0.01; y < 1.0; y += 0.05) {
        const double root = std::sqrt((y - 1.0) * (beta + t) * (beta + t) / (t - 1.0));
        const double display = std::log(beta + t) - std::log(beta) + 2.0 * (y - 1.0) / root -
                               2.0 * (t - 1.0) / (beta + t);
        CHECK(c.h(y) == doctest::Approx(display).epsilon(1e-10));
    }
}

TEST_CASE("discretize rounds, clamps and reports the budget") {
    const ConstantProfile one(1.0);
    const auto s = discretize(one, 5, 5);
    CHECK(s.f == std::vector<long long>{5, 5, 5, 5, 5});
    CHECK(!s.clamped);

    // full clamping against the running budget
    const ConstantProfile ten(10.0);
    const auto c = discretize(ten, 4, 2);
    CHECK(c.f == std::vector<long long>{2, 3, 4, 5});
    CHECK(c.clamped);

    CHECK_THROWS_AS(discretize(one, 4, 0), std::invalid_argument);

    // f(1) = ceil(g(1/n) n) for the opt profile at n = 1000
    const OptProfile opt(solve_mu_bar());
    const auto d = discretize(opt, 1000, 1444);
    CHECK(d.f[0] == 1443);
    CHECK(d.k_required == 1443);
    CHECK(!d.clamped);
}

TEST_CASE("discretization error is at most 1/n before clamping") {
    const OptProfile opt(solve_mu_bar());
    const int n = 500;
    const auto s = discretize(opt, n, 2 * n);
    for (int i = 1; i <= n; ++i) {
        const double gi = opt.g(static_cast<double>(i) / n);
        if (s.f[static_cast<size_t>(i) - 1] == 1) continue;   // clamped low at the end
        CHECK(std::abs(static_cast<double>(s.f[static_cast<size_t>(i) - 1]) / n - gi) <=
              1.0 / n + 1e-12);
    }
}

TEST_CASE("constrained budget tends to beta n") {
    for (double beta : {0.5, 1.0}) {
        const double t = solve_q(beta).t_star;
        const ConstrainedProfile c(beta, t);
        for (int n : {1000, 4000}) {
            const auto s = discretize(c, n, static_cast<long long>(beta * n) + 2);
            CHECK(s.k_required <= static_cast<long long>(beta * n) + 2);
            CHECK(s.k_required >= static_cast<long long>(beta * n) - 2);
        }
    }
}

TEST_CASE("tabulated profile interpolates and integrates") {
    // piecewise linear through (0, 1), (0.5, 2), (1, 1)
    const TabulatedProfile tab({0.0, 0.5, 1.0}, {1.0, 2.0, 1.0});
    CHECK(tab.g(0.25) == doctest::Approx(1.5));
    CHECK(tab.g(0.75) == doctest::Approx(1.5));
    const double direct =
        num::integrate([&](double z) { return 1.0 / tab.g(z); }, 0.0, 1.0, tab.knots(), 1e-11);
    CHECK(tab.h(1.0) == doctest::Approx(direct).epsilon(1e-9));

    CHECK_THROWS_AS(TabulatedProfile({0.0, 1.0}, {0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(TabulatedProfile({0.0, 0.5, 1.0}, {1.0, 0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("forced-skip schedule for rules without samples") {
    const auto s = no_sample_schedule({1, 2, 3});
    CHECK(s.n == 4);
    CHECK(s.f == std::vector<long long>{0, 1, 2, 3});
    CHECK(s.k_required == 0);
    CHECK_THROWS_AS(no_sample_schedule({2}), std::invalid_argument);
}
