#pragma once

#include "prophet/core.hpp"
#include "prophet/profiles.hpp"

#include <vector>

namespace prophet {

// Asymptotic two-point ratio of the rule given by g at worst-case parameter a:
//   integral over [0,1] of exp(-h(y)) (1 - a^{g(y)}) / (g(y) (1 - a)) dy,
// evaluated under the substitution u = sqrt(1-y) so profiles vanishing like
// sqrt(1-y) at the right endpoint integrate cleanly. Absolute tolerance 1e-8.
double pointwise_ratio(const Profile& g, double a);

// a -> 1 limit of the above: integral of exp(-h(y)).
double pointwise_ratio_limit_a1(const Profile& g);

struct WorstCase {
    double alpha;
    double a_star;   // 1.0 means the infimum is attained in the a -> 1 limit
};

// inf over a in [0,1) of pointwise_ratio, 512-point scan plus golden-section
// refinement to |da| < 1e-6; the endpoints a = 0 and a -> 1 are evaluated
// directly / by limit.
WorstCase worst_case_ratio(const Profile& g);

// Exact ratio of a finite schedule on the two-point distribution with atom a:
//   sum_i prod_{j<i} (1 - 1/(f(j)+1)) * (1/(f(i)+1)) * (1 - a^{f(i)+1})
// divided by 1 - a^n. This is the engine's ground-truth oracle.
double exact_ratio_two_point(const DiscreteSchedule& schedule, double a);

// One sequential MRS run: k samples then n values; at step i the rule stops
// iff X_i outranks the maximum of a uniform random size-f(i) subset of the
// k+i-1 values seen so far. Subsets are drawn fresh and independently at each
// step. The stop decision is realized by its exact law: given the seen
// values, X_i beats the subset maximum iff the subset avoids all c values
// outranking X_i, which happens with probability C(m-c, f)/C(m, f).
RunOutcome run_mrs(const DiscreteSchedule& schedule, const ProblemInstance& instance,
                   TieBreaker tie, Rng& rng);

// Same engine on pre-drawn values (k samples followed by n values); rng only
// drives the subset decisions. Lets callers pair the run with statistics of
// the same draws.
RunOutcome run_mrs_on_values(const DiscreteSchedule& schedule, long long k,
                             const std::vector<double>& values,
                             const std::vector<double>& tags, TieBreaker tie, Rng& rng);

// Reference implementation that materializes every subset draw. Slow; kept
// for testing and benchmarks.
RunOutcome run_mrs_literal(const DiscreteSchedule& schedule, const ProblemInstance& instance,
                           TieBreaker tie, Rng& rng);

// O(n + k) kernel for two-point instances under JITTER ties: group counts
// replace the explicit rank structure.
RunOutcome run_mrs_two_point(const DiscreteSchedule& schedule, double a, long long k,
                             Rng& rng);

} // namespace prophet
