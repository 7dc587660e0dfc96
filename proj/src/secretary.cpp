#include "prophet/secretary.hpp"

#include "prophet/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace prophet {

namespace {
constexpr double kE = 2.718281828459045235;
constexpr double kBetaMax = 1.0 / (kE - 1.0);
} // namespace

long long secretary_skip_count(double beta, int n) {
    if (!(beta >= 0.0 && beta <= kBetaMax + 1e-12))
        throw std::invalid_argument("secretary: beta must be in [0, 1/(e-1)]");
    const double frac = (1.0 + beta) / kE - beta;
    return static_cast<long long>(std::floor(frac * n + 1e-12));
}

RunOutcome run_secretary(double beta, const ProblemInstance& instance, TieBreaker tie,
                         Rng& rng) {
    const int n = instance.n;
    const long long m = secretary_skip_count(beta, n);
    if (instance.k != static_cast<long long>(std::floor(beta * n + 1e-12)))
        throw std::invalid_argument("run_secretary: instance.k must equal floor(beta n)");

    TaggedValue lead{0.0, -std::numeric_limits<double>::infinity()};
    bool any = false;
    auto absorb = [&](const TaggedValue& v) {
        if (!any || outranks(v, lead, tie)) {
            lead = v;
            any = true;
        }
    };
    for (long long p = 0; p < instance.k + m; ++p)
        absorb({instance.dist.sample(rng), rng.next_u01()});

    for (int j = static_cast<int>(m) + 1; j <= n; ++j) {
        const TaggedValue x{instance.dist.sample(rng), rng.next_u01()};
        if (any && outranks(x, lead, tie))
            return {j, x.value, j, 0};
        if (!any) {
            // k = m = 0: nothing to compare against, the first value wins
            return {j, x.value, j, 0};
        }
        absorb(x);
    }
    return {0, 0.0, n, 0};
}

double secretary_integral(double beta, double a) {
    if (!(beta > 0.0 || beta == 0.0) || beta > kBetaMax + 1e-12)
        throw std::invalid_argument("secretary_integral: beta out of range");
    if (!(a >= 0.0 && a <= 1.0))
        throw std::invalid_argument("secretary_integral: a must be in [0,1]");
    const double lo = (1.0 + beta) / kE;
    const double hi = 1.0 + beta;
    if (a == 1.0)
        return num::integrate([](double t) { return 1.0 / t; }, lo, hi, 1e-12);
    if (a == 0.0)
        return num::integrate([](double t) { return 1.0 / (t * t); }, lo, hi, 1e-12);
    const double la = std::log(a);
    return num::integrate(
        [&](double t) { return -std::expm1(t * la) / ((1.0 - a) * t * t); }, lo, hi, 1e-12);
}

SecretaryCheck secretary_ratio_lower_check(double beta, const std::vector<double>& a_grid) {
    double worst = std::numeric_limits<double>::infinity();
    for (double a : a_grid) worst = std::min(worst, secretary_integral(beta, a) - 1.0);
    return {worst >= -1e-9, worst};
}

} // namespace prophet
