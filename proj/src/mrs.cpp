#include "prophet/mrs.hpp"

#include "prophet/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace prophet {

namespace {

// (1 - a^g) / (g (1 - a)) with the g -> 0 limit -ln(a)/(1-a).
double ratio_factor(double g, double a) {
    if (a == 0.0) return g > 0.0 ? 1.0 / g : 0.0;
    const double la = std::log(a);
    const double x = g * la;
    if (std::abs(x) < 1e-9) return -la * (1.0 + 0.5 * x) / (1.0 - a);
    return -std::expm1(x) / (g * (1.0 - a));
}

std::vector<double> knots_in_u(const Profile& g) {
    std::vector<double> ks;
    for (double y : g.knots())
        if (y > 0.0 && y < 1.0) ks.push_back(std::sqrt(1.0 - y));
    return ks;
}

void validate_schedule(const DiscreteSchedule& s, long long k) {
    for (int i = 1; i <= s.n; ++i) {
        const long long f = s.at(i);
        if (f < 0 || (f == 0 && k > 0))
            throw std::invalid_argument("run_mrs: invalid subset size at step " +
                                        std::to_string(i));
        if (f > k + i - 1)
            throw std::invalid_argument("run_mrs: f exceeds seen values at step " +
                                        std::to_string(i));
    }
}

// log-factorial table shared per thread; grows on demand
double log_fact(long long n) {
    thread_local std::vector<double> table{0.0, 0.0};
    while (static_cast<long long>(table.size()) <= n)
        table.push_back(table.back() + std::log(static_cast<double>(table.size())));
    return table[static_cast<size_t>(n)];
}

// P(uniform size-f subset of m items avoids a fixed set of c of them)
double subset_avoid_prob(long long m, long long c, long long f) {
    if (c == 0) return 1.0;
    if (f > m - c) return 0.0;
    return std::exp(log_fact(m - c) + log_fact(m - f) - log_fact(m) - log_fact(m - c - f));
}

struct Fenwick {
    explicit Fenwick(size_t n) : tree(n + 1, 0) {}
    void add(size_t i) {
        for (; i < tree.size(); i += i & (~i + 1)) ++tree[i];
    }
    long long query(size_t i) const {   // count of inserted ids <= i
        long long s = 0;
        for (; i > 0; i -= i & (~i + 1)) s += tree[i];
        return s;
    }
    std::vector<int> tree;
};

} // namespace

double pointwise_ratio(const Profile& g, double a) {
    if (!(a >= 0.0 && a < 1.0))
        throw std::invalid_argument("pointwise_ratio: a must be in [0,1)");
    auto f = [&](double u) {
        const double y = 1.0 - u * u;
        const double gy = g.g(y);
        const double hy = g.h(y);
        return std::exp(-hy) * ratio_factor(gy, a) * 2.0 * u;
    };
    const auto ks = knots_in_u(g);
    return num::integrate(f, 0.0, 1.0, ks, 1e-8);
}

double pointwise_ratio_limit_a1(const Profile& g) {
    auto f = [&](double u) { return std::exp(-g.h(1.0 - u * u)) * 2.0 * u; };
    const auto ks = knots_in_u(g);
    return num::integrate(f, 0.0, 1.0, ks, 1e-8);
}

WorstCase worst_case_ratio(const Profile& g) {
    constexpr int kGrid = 512;
    double best_a = 0.0;
    double best_v = pointwise_ratio(g, 0.0);
    for (int i = 1; i < kGrid; ++i) {
        const double a = static_cast<double>(i) / kGrid;
        const double v = pointwise_ratio(g, a);
        if (v < best_v) {
            best_v = v;
            best_a = a;
        }
    }
    const double step = 1.0 / kGrid;
    const auto refined =
        num::golden_min([&](double a) { return pointwise_ratio(g, a); },
                        std::max(0.0, best_a - step), std::min(1.0 - 1e-9, best_a + step), 1e-6);
    if (refined.value < best_v) {
        best_v = refined.value;
        best_a = refined.x;
    }
    const double at_one = pointwise_ratio_limit_a1(g);
    if (at_one <= best_v) return {at_one, 1.0};
    return {best_v, best_a};
}

double exact_ratio_two_point(const DiscreteSchedule& schedule, double a) {
    if (!(a >= 0.0 && a < 1.0))
        throw std::invalid_argument("exact_ratio_two_point: a must be in [0,1)");
    const double la = a > 0.0 ? std::log(a) : 0.0;
    double reach = 1.0;
    double value = 0.0;
    for (int i = 1; i <= schedule.n; ++i) {
        const long long f = schedule.at(i);
        if (f == 0) continue;   // forced skip
        const double p = 1.0 / static_cast<double>(f + 1);
        const double tail = a > 0.0 ? -std::expm1(static_cast<double>(f + 1) * la) : 1.0;
        value += reach * p * tail;
        reach *= 1.0 - p;
    }
    const double denom = a > 0.0 ? -std::expm1(static_cast<double>(schedule.n) * la) : 1.0;
    return value / denom;
}

RunOutcome run_mrs(const DiscreteSchedule& schedule, const ProblemInstance& instance,
                   TieBreaker tie, Rng& rng) {
    if (schedule.n != instance.n)
        throw std::invalid_argument("run_mrs: schedule size differs from n");
    const size_t total = static_cast<size_t>(instance.k) + static_cast<size_t>(instance.n);
    std::vector<double> values(total), tags(total);
    for (size_t p = 0; p < total; ++p) {
        values[p] = instance.dist.sample(rng);
        tags[p] = rng.next_u01();
    }
    return run_mrs_on_values(schedule, instance.k, values, tags, tie, rng);
}

RunOutcome run_mrs_on_values(const DiscreteSchedule& schedule, long long k,
                             const std::vector<double>& values,
                             const std::vector<double>& tags, TieBreaker tie, Rng& rng) {
    validate_schedule(schedule, k);
    const int n = schedule.n;
    const size_t total = static_cast<size_t>(k) + static_cast<size_t>(n);
    if (values.size() != total || tags.size() != total)
        throw std::invalid_argument("run_mrs_on_values: need k + n values");

    // dense order ids: unique lexicographic ranks under JITTER, value-class
    // ids (ties shared) under STRICT
    std::vector<size_t> id(total);
    if (tie == TieBreaker::Jitter) {
        std::vector<size_t> order(total);
        std::iota(order.begin(), order.end(), size_t{0});
        std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
            if (values[x] != values[y]) return values[x] < values[y];
            return tags[x] < tags[y];
        });
        for (size_t r = 0; r < total; ++r) id[order[r]] = r + 1;
    } else {
        std::vector<double> sorted(values);
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (size_t p = 0; p < total; ++p)
            id[p] = static_cast<size_t>(std::lower_bound(sorted.begin(), sorted.end(),
                                                         values[p]) -
                                        sorted.begin()) +
                    1;
    }

    Fenwick fw(total);
    for (long long p = 0; p < k; ++p) fw.add(id[static_cast<size_t>(p)]);

    for (int i = 1; i <= n; ++i) {
        const size_t pos = static_cast<size_t>(k) + static_cast<size_t>(i) - 1;
        const long long f = schedule.at(i);
        if (f > 0) {
            const long long m = k + i - 1;
            // c = seen values outranking X_i (>= under STRICT, > by rank under JITTER)
            const long long c =
                m - fw.query(tie == TieBreaker::Jitter ? id[pos] : id[pos] - 1);
            const double p_stop = subset_avoid_prob(m, c, f);
            if (rng.next_u01() < p_stop)
                return {i, values[pos], i, 0};
        }
        fw.add(id[pos]);
    }
    return {0, 0.0, n, 0};
}

RunOutcome run_mrs_literal(const DiscreteSchedule& schedule, const ProblemInstance& instance,
                           TieBreaker tie, Rng& rng) {
    if (schedule.n != instance.n)
        throw std::invalid_argument("run_mrs: schedule size differs from n");
    validate_schedule(schedule, instance.k);
    const int n = instance.n;
    const long long k = instance.k;

    std::vector<TaggedValue> seen;
    seen.reserve(static_cast<size_t>(k) + static_cast<size_t>(n));
    for (long long p = 0; p < k; ++p) {
        TaggedValue v{instance.dist.sample(rng), 0.0};
        v.tag = rng.next_u01();
        seen.push_back(v);
    }

    std::vector<size_t> idx;
    for (int i = 1; i <= n; ++i) {
        TaggedValue x{instance.dist.sample(rng), 0.0};
        x.tag = rng.next_u01();
        const long long f = schedule.at(i);
        if (f > 0) {
            const size_t m = seen.size();
            idx.resize(m);
            std::iota(idx.begin(), idx.end(), size_t{0});
            TaggedValue best;
            bool any = false;
            for (long long l = 0; l < f; ++l) {
                const size_t j =
                    static_cast<size_t>(l) +
                    static_cast<size_t>(rng.next_below(m - static_cast<size_t>(l)));
                std::swap(idx[static_cast<size_t>(l)], idx[j]);
                const TaggedValue& cand = seen[idx[static_cast<size_t>(l)]];
                if (!any || outranks(cand, best, tie)) {
                    best = cand;
                    any = true;
                }
            }
            if (outranks(x, best, tie))
                return {i, x.value, i, 0};
        }
        seen.push_back(x);
    }
    return {0, 0.0, n, 0};
}

RunOutcome run_mrs_two_point(const DiscreteSchedule& schedule, double a, long long k,
                             Rng& rng) {
    if (!(a >= 0.0 && a < 1.0))
        throw std::invalid_argument("run_mrs_two_point: a must be in [0,1)");
    const int n = schedule.n;
    long long ones = 0, zeros = 0;
    for (long long p = 0; p < k; ++p) (rng.next_u01() < a ? zeros : ones)++;

    for (int i = 1; i <= n; ++i) {
        const bool is_one = !(rng.next_u01() < a);
        const long long m = ones + zeros;
        // rank of a fresh tag inside its value group is uniform, so the count
        // of seen values outranking X_i needs no explicit tags
        const long long c =
            is_one ? static_cast<long long>(rng.next_below(static_cast<uint64_t>(ones + 1)))
                   : ones + static_cast<long long>(
                                rng.next_below(static_cast<uint64_t>(zeros + 1)));
        const long long f = schedule.at(i);
        if (f > 0) {
            if (f > m + 0)
                throw std::invalid_argument("run_mrs_two_point: f exceeds seen values at step " +
                                            std::to_string(i));
            const double p_stop = subset_avoid_prob(m, c, f);
            if (rng.next_u01() < p_stop)
                return {i, is_one ? 1.0 : 0.0, i, 0};
        }
        (is_one ? ones : zeros)++;
    }
    return {0, 0.0, n, 0};
}

} // namespace prophet
