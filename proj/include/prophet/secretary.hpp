#pragma once

#include "prophet/core.hpp"

#include <vector>

namespace prophet {

// Number of values skipped by the sample-augmented secretary rule:
// floor(((1+beta)/e - beta) * n). Requires beta <= 1/(e-1).
long long secretary_skip_count(double beta, int n);

// Skips X_1..X_m, then stops at the first value exceeding everything seen so
// far (samples and skipped values included). Requires instance.k = floor(beta n).
RunOutcome run_secretary(double beta, const ProblemInstance& instance, TieBreaker tie,
                         Rng& rng);

struct SecretaryCheck {
    bool ok;
    double worst_margin;   // min over the grid of H(a) - 1
};

// Numeric verification of the guarantee's integral inequality
//   H(a) = integral over [(1+beta)/e, 1+beta] of (1-a^t) / ((1-a) t^2) dt >= 1.
// a = 1 is evaluated by the limit (1-a^t)/(1-a) -> t.
double secretary_integral(double beta, double a);
SecretaryCheck secretary_ratio_lower_check(double beta, const std::vector<double>& a_grid);

} // namespace prophet
