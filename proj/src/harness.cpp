#include "prophet/harness.hpp"

#include "prophet/secretary.hpp"
#include "prophet/streaming.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace prophet {

RuleSpec RuleSpec::mrs(std::shared_ptr<const Profile> p) {
    RuleSpec r;
    r.kind = Kind::Mrs;
    r.profile = std::move(p);
    r.id = "mrs:" + r.profile->to_string();
    return r;
}

RuleSpec RuleSpec::mrs_schedule(DiscreteSchedule s, std::string id) {
    RuleSpec r;
    r.kind = Kind::Mrs;
    r.fixed_schedule = std::make_shared<DiscreteSchedule>(std::move(s));
    r.id = std::move(id);
    return r;
}

RuleSpec RuleSpec::streaming(std::shared_ptr<const Profile> p, double epsilon) {
    RuleSpec r;
    r.kind = Kind::Streaming;
    r.profile = std::move(p);
    r.epsilon = epsilon;
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << "streaming:" << r.profile->to_string() << ":eps=" << epsilon;
    r.id = os.str();
    return r;
}

RuleSpec RuleSpec::secretary() {
    RuleSpec r;
    r.kind = Kind::Secretary;
    r.id = "secretary";
    return r;
}

RuleSpec RuleSpec::take_first() {
    RuleSpec r;
    r.kind = Kind::TakeFirst;
    r.id = "take-first";
    return r;
}

RuleSpec RuleSpec::optimal_rank() {
    RuleSpec r;
    r.kind = Kind::OptimalRank;
    r.id = "optimal-rank";
    return r;
}

std::vector<double> run_trials(long long trials,
                               const std::function<double(long long, Rng&)>& trial,
                               uint64_t master_seed) {
    if (trials < 1) throw std::invalid_argument("run_trials: trials must be >= 1");
    std::vector<double> out(static_cast<size_t>(trials));
#pragma omp parallel for schedule(static)
    for (long long t = 0; t < trials; ++t) {
        Rng rng(master_seed, static_cast<uint64_t>(t));
        out[static_cast<size_t>(t)] = trial(t, rng);
    }
    return out;
}

MeanStderr mean_stderr(const std::vector<double>& xs) {
    // fixed-order Neumaier summation: bit-identical regardless of threading
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        const double t = sum + x;
        comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    const double mean = (sum + comp) / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double sd = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
    return {mean, sd / std::sqrt(static_cast<double>(xs.size()))};
}

namespace {

double optimal_rank_continue_value(int n, std::vector<double>& cont) {
    // cont[i] = success probability of the optimal rule from step i+1 on,
    // given it has not stopped through step i
    cont.assign(static_cast<size_t>(n) + 2, 0.0);
    for (int i = n; i >= 1; --i) {
        const double vnext = cont[static_cast<size_t>(i) + 1];
        const double accept = static_cast<double>(i) / n;
        cont[static_cast<size_t>(i)] =
            (std::max(accept, vnext) + (i - 1) * vnext) / static_cast<double>(i);
    }
    return cont[1];
}

struct TrialResult {
    double accepted;
    double trial_max;   // max of the n online values (same draws)
};

// One run of a rule with the trial maximum tracked alongside. Values are
// drawn in stream order: k samples, then n online values.
TrialResult run_rule_trial(const RuleSpec& algo, const ProblemInstance& inst, TieBreaker tie,
                           Rng& rng, bool need_max, const std::vector<double>* accept_record) {
    const int n = inst.n;
    switch (algo.kind) {
    case RuleSpec::Kind::Mrs: {
        const DiscreteSchedule& sched = *algo.fixed_schedule;
        if (!need_max && inst.dist.kind() == DistKind::TwoPoint && tie == TieBreaker::Jitter) {
            const RunOutcome o = run_mrs_two_point(sched, inst.dist.two_point_a(), inst.k, rng);
            return {o.accepted_value, 0.0};
        }
        const size_t total = static_cast<size_t>(inst.k) + static_cast<size_t>(n);
        std::vector<double> values(total), tags(total);
        double mx = 0.0;
        for (size_t p = 0; p < total; ++p) {
            values[p] = inst.dist.sample(rng);
            tags[p] = rng.next_u01();
            if (p >= static_cast<size_t>(inst.k)) mx = std::max(mx, values[p]);
        }
        const RunOutcome o = run_mrs_on_values(sched, inst.k, values, tags, tie, rng);
        return {o.accepted_value, mx};
    }
    case RuleSpec::Kind::Streaming: {
        if (!need_max) {
            const RunOutcome o = run_streaming(*algo.profile, algo.epsilon, inst, tie, rng);
            return {o.accepted_value, 0.0};
        }
        const size_t total = static_cast<size_t>(inst.k) + static_cast<size_t>(n);
        std::vector<double> values(total);
        double mx = 0.0;
        for (size_t p = 0; p < total; ++p) {
            values[p] = inst.dist.sample(rng);
            if (p >= static_cast<size_t>(inst.k)) mx = std::max(mx, values[p]);
        }
        VectorFeed feed(std::move(values));
        const RunOutcome o =
            run_streaming_feed(*algo.profile, algo.epsilon, feed, n, inst.k, tie, rng);
        return {o.accepted_value, mx};
    }
    case RuleSpec::Kind::Secretary: {
        if (!need_max) {
            const RunOutcome o = run_secretary(inst.beta(), inst, tie, rng);
            return {o.accepted_value, 0.0};
        }
        // replicate the rule with the trial maximum tracked
        const double beta = inst.beta();
        const long long m = secretary_skip_count(beta, n);
        TaggedValue lead{0.0, -std::numeric_limits<double>::infinity()};
        for (long long p = 0; p < inst.k; ++p) {
            const TaggedValue v{inst.dist.sample(rng), rng.next_u01()};
            if (outranks(v, lead, tie)) lead = v;
        }
        double accepted = 0.0;
        bool stopped = false;
        double mx = 0.0;
        for (int j = 1; j <= n; ++j) {
            const TaggedValue x{inst.dist.sample(rng), rng.next_u01()};
            mx = std::max(mx, x.value);
            if (!stopped && j > m && outranks(x, lead, tie)) {
                accepted = x.value;
                stopped = true;
            }
            if (outranks(x, lead, tie)) lead = x;
        }
        return {accepted, mx};
    }
    case RuleSpec::Kind::TakeFirst: {
        double first = 0.0, mx = 0.0;
        for (long long p = 0; p < inst.k; ++p) {
            inst.dist.sample(rng);
            rng.next_u01();
        }
        for (int j = 1; j <= n; ++j) {
            const double v = inst.dist.sample(rng);
            rng.next_u01();
            if (j == 1) first = v;
            mx = std::max(mx, v);
        }
        return {first, mx};
    }
    case RuleSpec::Kind::OptimalRank: {
        // accept a relative record at step i iff i/n >= continuation value
        const std::vector<double>& cont = *accept_record;
        TaggedValue lead{0.0, -std::numeric_limits<double>::infinity()};
        bool any = false;
        double accepted = 0.0;
        bool stopped = false;
        double mx = 0.0;
        for (int j = 1; j <= n; ++j) {
            const TaggedValue x{inst.dist.sample(rng), rng.next_u01()};
            mx = std::max(mx, x.value);
            const bool record = !any || outranks(x, lead, tie);
            if (record) lead = x;
            any = true;
            if (!stopped && record &&
                static_cast<double>(j) / n >= cont[static_cast<size_t>(j) + 1]) {
                accepted = x.value;
                stopped = true;
            }
        }
        return {accepted, mx};
    }
    }
    return {0.0, 0.0};
}

DiscreteSchedule resolve_schedule(const RuleSpec& algo, const ProblemInstance& inst) {
    if (algo.fixed_schedule) return *algo.fixed_schedule;
    if (!algo.profile) throw std::invalid_argument("rule has neither profile nor schedule");
    return discretize(*algo.profile, inst.n, inst.k);
}

} // namespace

double optimal_rank_rule_success(int n) {
    if (n < 1) throw std::invalid_argument("optimal_rank_rule_success: n must be >= 1");
    std::vector<double> cont;
    return optimal_rank_continue_value(n, cont);
}

RatioEstimate monte_carlo_ratio(const RuleSpec& algo, const ProblemInstance& instance,
                                long long trials, TieBreaker tie, bool paired_empirical_max) {
    RuleSpec rule = algo;
    if (rule.kind == RuleSpec::Kind::Mrs && !rule.fixed_schedule)
        rule.fixed_schedule = std::make_shared<DiscreteSchedule>(resolve_schedule(rule, instance));
    std::vector<double> cont;
    if (rule.kind == RuleSpec::Kind::OptimalRank)
        optimal_rank_continue_value(instance.n, cont);
    // adversarial outcomes carry exponents; work in units of the top value
    const bool scaled = instance.dist.kind() == DistKind::Adversarial;

    std::vector<double> accepted(static_cast<size_t>(trials));
    std::vector<double> maxima(paired_empirical_max ? static_cast<size_t>(trials) : 0);
#pragma omp parallel for schedule(static)
    for (long long t = 0; t < trials; ++t) {
        Rng rng(instance.seed, static_cast<uint64_t>(t));
        TrialResult r = run_rule_trial(rule, instance, tie, rng, paired_empirical_max, &cont);
        if (scaled) {
            r.accepted =
                r.accepted > 0.0 ? instance.dist.adversarial_scaled_value(r.accepted) : 0.0;
            r.trial_max =
                r.trial_max > 0.0 ? instance.dist.adversarial_scaled_value(r.trial_max) : 0.0;
        }
        accepted[static_cast<size_t>(t)] = r.accepted;
        if (paired_empirical_max) maxima[static_cast<size_t>(t)] = r.trial_max;
    }

    RatioEstimate est;
    est.trials = trials;
    est.n = instance.n;
    est.seed = instance.seed;
    est.algo_id = rule.id;
    est.dist_id = instance.dist.to_string();
    const auto acc = mean_stderr(accepted);
    if (!paired_empirical_max) {
        const double denom = scaled ? instance.dist.expected_max_scaled(instance.n)
                                    : instance.dist.expected_max(instance.n);
        est.mean = acc.mean / denom;
        est.stderr_ = acc.stderr_ / denom;
        return est;
    }
    const auto mx = mean_stderr(maxima);
    const double r = acc.mean / mx.mean;
    double cov = 0.0;
    for (size_t i = 0; i < accepted.size(); ++i)
        cov += (accepted[i] - acc.mean) * (maxima[i] - mx.mean);
    cov /= static_cast<double>(accepted.size() - 1);
    const double var_a = acc.stderr_ * acc.stderr_ * static_cast<double>(trials);
    const double var_m = mx.stderr_ * mx.stderr_ * static_cast<double>(trials);
    const double var_r =
        (var_a + r * r * var_m - 2.0 * r * cov) / (mx.mean * mx.mean * static_cast<double>(trials));
    est.mean = r;
    est.stderr_ = std::sqrt(std::max(0.0, var_r));
    return est;
}

SweepResult sweep_two_point(const RuleSpec& algo, const std::vector<double>& a_grid, int n,
                            long long k, long long trials, uint64_t seed) {
    SweepResult res;
    res.rows.reserve(a_grid.size());
    double best = std::numeric_limits<double>::infinity();
    for (double a : a_grid) {
        if (!(a >= 0.0 && a < 1.0))
            throw std::invalid_argument("sweep_two_point: grid values must be in [0,1)");
        // a is the pointwise-analysis parameter F^n; the finite instance uses
        // the atom a^(1/n)
        const double atom = a > 0.0 ? std::pow(a, 1.0 / n) : 0.0;
        ProblemInstance inst{n, k, Distribution::two_point(atom), seed};
        RatioEstimate est = monte_carlo_ratio(algo, inst, trials);
        est.a = a;
        if (est.mean < best) {
            best = est.mean;
            res.argmin_a = a;
            res.min_ratio = est.mean;
        }
        res.rows.push_back(std::move(est));
    }
    return res;
}

double max_selection_probability(double beta, int n, long long trials, uint64_t seed) {
    const long long k = static_cast<long long>(std::floor(beta * n + 1e-12));
    const long long m = secretary_skip_count(beta, n);
    const auto hits = run_trials(
        trials,
        [&](long long, Rng& rng) {
            TaggedValue lead{0.0, -std::numeric_limits<double>::infinity()};
            bool any = false;
            for (long long p = 0; p < k; ++p) {
                const TaggedValue v{rng.next_u01(), rng.next_u01()};
                if (!any || outranks(v, lead, TieBreaker::Jitter)) lead = v;
                any = true;
            }
            TaggedValue accepted{};
            bool stopped = false;
            TaggedValue xmax{};
            bool xany = false;
            for (int j = 1; j <= n; ++j) {
                const TaggedValue x{rng.next_u01(), rng.next_u01()};
                if (!xany || outranks(x, xmax, TieBreaker::Jitter)) {
                    xmax = x;
                    xany = true;
                }
                const bool beats = !any || outranks(x, lead, TieBreaker::Jitter);
                if (!stopped && j > m && beats) {
                    accepted = x;
                    stopped = true;
                }
                if (beats) {
                    lead = x;
                    any = true;
                }
            }
            return stopped && accepted.value == xmax.value && accepted.tag == xmax.tag ? 1.0
                                                                                       : 0.0;
        },
        seed);
    return mean_stderr(hits).mean;
}

RatioEstimate adversarial_ratio(const RuleSpec& algo, int n, long long trials, uint64_t seed) {
    if (algo.kind == RuleSpec::Kind::Mrs && !algo.fixed_schedule)
        throw std::invalid_argument("adversarial_ratio: MRS rules need an explicit schedule");
    const ProblemInstance inst{n, 0, Distribution::adversarial(n), seed};
    return monte_carlo_ratio(algo, inst, trials);
}

} // namespace prophet
