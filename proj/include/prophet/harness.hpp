#pragma once

#include "prophet/core.hpp"
#include "prophet/mrs.hpp"
#include "prophet/profiles.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace prophet {

struct RatioEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    long long trials = 0;
    int n = 0;
    uint64_t seed = 0;
    std::string algo_id;
    std::string dist_id;
    double a = std::nan("");   // two-point sweeps: the worst-case parameter F^n
};

// Executable rule specification.
struct RuleSpec {
    enum class Kind { Mrs, Streaming, Secretary, TakeFirst, OptimalRank };
    Kind kind = Kind::Mrs;
    std::shared_ptr<const Profile> profile;   // Mrs / Streaming
    double epsilon = 0.0;                     // Streaming
    std::shared_ptr<const DiscreteSchedule> fixed_schedule;   // optional, overrides profile
    std::string id;

    static RuleSpec mrs(std::shared_ptr<const Profile> p);
    static RuleSpec mrs_schedule(DiscreteSchedule s, std::string id);
    static RuleSpec streaming(std::shared_ptr<const Profile> p, double epsilon);
    static RuleSpec secretary();
    static RuleSpec take_first();
    static RuleSpec optimal_rank();
};

// Runs `trials` independent trials (parallel when OpenMP is enabled) and
// fills one slot per trial; the reduction is a fixed serial pass so results
// are identical regardless of thread count or scheduling.
std::vector<double> run_trials(long long trials, const std::function<double(long long, Rng&)>& trial,
                               uint64_t master_seed);

struct MeanStderr {
    double mean;
    double stderr_;
};
MeanStderr mean_stderr(const std::vector<double>& xs);

// Mean accepted value over trials divided by E[max]. The denominator is the
// closed form / quadrature value by default; with paired_empirical_max the
// denominator is the per-trial empirical maximum of the same draws (shared
// seeds, variance reduction) and the standard error comes from the delta
// method.
RatioEstimate monte_carlo_ratio(const RuleSpec& algo, const ProblemInstance& instance,
                                long long trials, TieBreaker tie = TieBreaker::Jitter,
                                bool paired_empirical_max = false);

struct SweepResult {
    std::vector<RatioEstimate> rows;
    double argmin_a = std::nan("");
    double min_ratio = std::nan("");
};

// Worst-case sweep over the two-point family. The grid parameter a is the
// pointwise-analysis variable F^n, so each cell runs on the atom a^(1/n);
// trials share seeds across cells (common random numbers), which keeps the
// empirical argmin stable.
SweepResult sweep_two_point(const RuleSpec& algo, const std::vector<double>& a_grid, int n,
                            long long k, long long trials, uint64_t seed);

// Success probability of the optimal rank-based rule selecting the maximum of
// n exchangeable distinct values (backward recursion over (step, is-record)).
double optimal_rank_rule_success(int n);

// Probability that the secretary rule picks the true maximum of the values.
double max_selection_probability(double beta, int n, long long trials, uint64_t seed);

// Competitive ratio on the Adversarial(n) instance, computed in units of the
// dominant value so nothing overflows. n <= 12.
RatioEstimate adversarial_ratio(const RuleSpec& algo, int n, long long trials, uint64_t seed);

} // namespace prophet
