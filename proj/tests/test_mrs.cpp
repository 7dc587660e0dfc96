#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prophet/control.hpp"
#include "prophet/mrs.hpp"

#include <cmath>
#include <vector>

using namespace prophet;

namespace {

DiscreteSchedule constant_schedule(int n, long long f) {
    DiscreteSchedule s;
    s.n = n;
    s.f.assign(static_cast<size_t>(n), f);
    s.k_required = schedule_k_required(s.f);
    return s;
}

DiscreteSchedule all_seen_schedule(int n, long long k) {
    DiscreteSchedule s;
    s.n = n;
    s.f.resize(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) s.f[static_cast<size_t>(i) - 1] = k + i - 1;
    s.k_required = schedule_k_required(s.f);
    return s;
}

} // namespace

TEST_CASE("pointwise ratio: constant profiles in closed form") {
    // value = (1 - e^{-1/c}) (1 - a^c) / (1 - a)
    for (double c : {0.5, 1.0, 2.0}) {
        const ConstantProfile g(c);
        for (double a : {0.0, 0.25, 0.6, 0.9}) {
            const double expect = (1.0 - std::exp(-1.0 / c)) *
                                  (a == 0.0 ? 1.0 : (1.0 - std::pow(a, c)) / (1.0 - a));
            CHECK(pointwise_ratio(g, a) == doctest::Approx(expect).epsilon(1e-7));
        }
        CHECK(pointwise_ratio_limit_a1(g) ==
              doctest::Approx(c * (1.0 - std::exp(-1.0 / c))).epsilon(1e-7));
    }
}

TEST_CASE("pointwise ratio of the opt profile equals the closed-form family") {
    const double mu = solve_mu_bar();
    const OptProfile opt(mu);
    for (double a : {0.1, 0.2, 0.3829, 0.5, 0.7, 0.9}) {
        const double b = -2.0 * std::log(a) / mu;
        CHECK(pointwise_ratio(opt, a) ==
              doctest::Approx(p_lower_expression(mu, b)).epsilon(1e-7));
    }
    CHECK(pointwise_ratio(opt, std::exp(-mu / 2.0)) ==
          doctest::Approx(p_value(mu)).epsilon(1e-6));
}

TEST_CASE("pointwise ratio agrees with the q objective on constrained profiles") {
    const ConstrainedProfile c(1.0, 0.317590);
    for (double a : {0.2, 0.455588, 0.8})
        CHECK(pointwise_ratio(c, a) == doctest::Approx(q_objective(1.0, 0.317590, a)).epsilon(1e-7));
}

TEST_CASE("worst case of the shipped profiles") {
    const double mu = solve_mu_bar();
    const auto wc_opt = worst_case_ratio(OptProfile(mu));
    CHECK(wc_opt.alpha == doctest::Approx(0.6534).epsilon(1e-4));
    CHECK(wc_opt.a_star == doctest::Approx(0.3829).epsilon(1e-3));

    const auto wc3 = worst_case_ratio(ThreeStepProfile{});
    CHECK(wc3.alpha == doctest::Approx(0.6370).epsilon(1e-3));
    CHECK(wc3.a_star == doctest::Approx(0.42530).epsilon(1e-3));

    const auto wcc = worst_case_ratio(ConstrainedProfile(1.0, 0.317590));
    CHECK(wcc.alpha == doctest::Approx(0.648957).epsilon(1e-3));
    CHECK(wcc.a_star == doctest::Approx(0.455588).epsilon(2e-3));

    // g == 1 is flat across a at 1 - 1/e, including both endpoints
    const auto wc1 = worst_case_ratio(ConstantProfile(1.0));
    CHECK(wc1.alpha == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-7));
}

TEST_CASE("exact two-point ratio identities") {
    // f == n-1 collapses to 1 - (1 - 1/n)^n independently of a
    for (int n : {1, 4, 10, 50}) {
        const auto s = constant_schedule(n, n - 1 > 0 ? n - 1 : 1);
        if (n == 1) continue;
        const double expect = 1.0 - std::pow(1.0 - 1.0 / n, n);
        for (double a : {0.0, 0.1, 0.5, 0.9, 0.99})
            CHECK(exact_ratio_two_point(s, a) == doctest::Approx(expect).epsilon(1e-13));
    }

    // single step: (1/(m+1)) (1 - a^{m+1}) / (1 - a)
    for (long long m : {1, 3, 7}) {
        const auto s = constant_schedule(1, m);
        for (double a : {0.0, 0.3, 0.8}) {
            const double expect = (1.0 - std::pow(a, static_cast<double>(m + 1))) /
                                  (static_cast<double>(m + 1) * (1.0 - a));
            CHECK(exact_ratio_two_point(s, a) ==
                  doctest::Approx(a == 0.0 ? 1.0 / (m + 1) : expect).epsilon(1e-13));
        }
    }

    CHECK_THROWS_AS(exact_ratio_two_point(constant_schedule(3, 2), 1.0), std::invalid_argument);
}

TEST_CASE("finite-n exact ratio converges to the pointwise value") {
    // the pointwise parameter is F^n, so the finite run uses atom a^(1/n)
    const int n = 30000;
    const auto s = three_step_schedule(n);
    const double a = 0.5;
    const double finite = exact_ratio_two_point(s, std::pow(a, 1.0 / n));
    const double limit = pointwise_ratio(ThreeStepProfile{}, a);
    CHECK(std::abs(finite - limit) < 1e-3);

    const double mu = solve_mu_bar();
    const OptProfile opt(mu);
    const int n2 = 10000;
    const auto s2 = discretize(opt, n2, static_cast<long long>(std::ceil(opt.g0() * n2)));
    const double abar = std::exp(-mu / 2.0);
    CHECK(std::abs(exact_ratio_two_point(s2, std::pow(abar, 1.0 / n2)) - p_value(mu)) < 1e-3);
}

TEST_CASE("run_mrs stops with probability 1/2 on a single fair comparison") {
    // n = 1, k = 1, f(1) = 1: exchangeability of two draws
    const auto s = constant_schedule(1, 1);
    const ProblemInstance inst{1, 1, Distribution::uniform01(), 91};
    long long stops = 0;
    const int trials = 1000000;
    for (int t = 0; t < trials; ++t) {
        Rng rng(inst.seed, static_cast<uint64_t>(t));
        stops += run_mrs(s, inst, TieBreaker::Jitter, rng).stopped();
    }
    const double p = static_cast<double>(stops) / trials;
    CHECK(std::abs(p - 0.5) < 3.0 * std::sqrt(0.25 / trials));
}

TEST_CASE("run_mrs overall stop probability for f == n-1") {
    const int n = 10;
    const auto s = constant_schedule(n, n - 1);
    const ProblemInstance inst{n, n - 1, Distribution::exponential(1.0), 92};
    long long stops = 0;
    const int trials = 1000000;
    for (int t = 0; t < trials; ++t) {
        Rng rng(inst.seed, static_cast<uint64_t>(t));
        stops += run_mrs(s, inst, TieBreaker::Jitter, rng).stopped();
    }
    const double expect = 1.0 - std::pow(1.0 - 1.0 / n, n);
    const double p = static_cast<double>(stops) / trials;
    CHECK(std::abs(p - expect) < 3.0 * std::sqrt(expect * (1 - expect) / trials));
}

TEST_CASE("fresh-samples law: conditional stop probability is 1/(f(i)+1)") {
    // literal engine, several schedules, n = k = 8
    const int n = 8;
    const long long k = 8;
    std::vector<DiscreteSchedule> schedules{constant_schedule(n, 8), all_seen_schedule(n, k)};
    DiscreteSchedule ramp;
    ramp.n = n;
    ramp.f = {1, 2, 3, 4, 5, 6, 7, 8};
    ramp.k_required = schedule_k_required(ramp.f);
    schedules.push_back(ramp);

    const int trials = 400000;
    for (const auto& s : schedules) {
        const ProblemInstance inst{n, k, Distribution::uniform01(), 93};
        std::vector<long long> reached(n + 1, 0), stopped(n + 1, 0);
        for (int t = 0; t < trials; ++t) {
            Rng rng(inst.seed, static_cast<uint64_t>(t));
            const auto o = run_mrs_literal(s, inst, TieBreaker::Jitter, rng);
            const int stop = o.stop_index;
            for (int i = 1; i <= (stop > 0 ? stop : n); ++i) ++reached[i];
            if (stop > 0) ++stopped[stop];
        }
        for (int i = 1; i <= n; ++i) {
            const double p = 1.0 / static_cast<double>(s.at(i) + 1);
            const double emp = static_cast<double>(stopped[i]) / reached[i];
            const double sigma = std::sqrt(p * (1 - p) / reached[i]);
            CHECK(std::abs(emp - p) < 3.5 * sigma);
        }
    }
}

TEST_CASE("fast, literal and two-point engines agree in distribution") {
    const int n = 6;
    const long long k = 3;
    DiscreteSchedule s;
    s.n = n;
    s.f = {2, 3, 1, 4, 6, 8};
    s.k_required = schedule_k_required(s.f);

    const double a = 0.4;
    const ProblemInstance inst{n, k, Distribution::two_point(a), 94};
    const int trials = 400000;

    std::vector<std::vector<long long>> stops(3, std::vector<long long>(n + 1, 0));
    std::vector<double> means(3, 0.0);
    for (int t = 0; t < trials; ++t) {
        Rng r1(1, static_cast<uint64_t>(t)), r2(2, static_cast<uint64_t>(t)),
            r3(3, static_cast<uint64_t>(t));
        const auto o1 = run_mrs(s, inst, TieBreaker::Jitter, r1);
        const auto o2 = run_mrs_literal(s, inst, TieBreaker::Jitter, r2);
        const auto o3 = run_mrs_two_point(s, a, k, r3);
        ++stops[0][static_cast<size_t>(o1.stop_index)];
        ++stops[1][static_cast<size_t>(o2.stop_index)];
        ++stops[2][static_cast<size_t>(o3.stop_index)];
        means[0] += o1.accepted_value;
        means[1] += o2.accepted_value;
        means[2] += o3.accepted_value;
    }
    // all three must match the exact oracle
    const double exact_mean =
        exact_ratio_two_point(s, a) * (1.0 - std::pow(a, n));
    for (int e = 0; e < 3; ++e) {
        const double mean = means[static_cast<size_t>(e)] / trials;
        CHECK(std::abs(mean - exact_mean) < 4.0 * std::sqrt(0.25 / trials));
    }
    // and pairwise stop-index distributions must agree (two-sample z test)
    for (int i = 0; i <= n; ++i) {
        for (int e = 1; e < 3; ++e) {
            const double p0 = static_cast<double>(stops[0][static_cast<size_t>(i)]) / trials;
            const double pe =
                static_cast<double>(stops[static_cast<size_t>(e)][static_cast<size_t>(i)]) / trials;
            const double pool = 0.5 * (p0 + pe);
            if (pool == 0.0) continue;
            const double sigma = std::sqrt(2.0 * pool * (1 - pool) / trials);
            CHECK(std::abs(p0 - pe) < 4.5 * sigma);
        }
    }
}

TEST_CASE("strict ties on an atomic distribution") {
    // two-point values with STRICT comparison: at step 1 with one sample,
    // X_1 stops iff X_1 = 1 and S_1 = 0: p = (1-a) a
    const auto s = constant_schedule(1, 1);
    const double a = 0.3;
    const ProblemInstance inst{1, 1, Distribution::two_point(a), 95};
    long long stops = 0;
    const int trials = 500000;
    for (int t = 0; t < trials; ++t) {
        Rng rng(inst.seed, static_cast<uint64_t>(t));
        stops += run_mrs(s, inst, TieBreaker::Strict, rng).stopped();
    }
    const double expect = (1.0 - a) * a;
    CHECK(std::abs(static_cast<double>(stops) / trials - expect) <
          3.0 * std::sqrt(expect * (1 - expect) / trials));
}

TEST_CASE("schedule validation") {
    const auto s = constant_schedule(4, 6);
    const ProblemInstance inst{4, 2, Distribution::uniform01(), 96};
    Rng rng(1);
    CHECK_THROWS_WITH_AS(static_cast<void>(run_mrs(s, inst, TieBreaker::Jitter, rng)),
                         doctest::Contains("step 1"), std::invalid_argument);

    const ProblemInstance ok{4, 6, Distribution::uniform01(), 97};
    CHECK_NOTHROW(static_cast<void>(run_mrs(s, ok, TieBreaker::Jitter, rng)));
}
