#include "prophet/streaming.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace prophet {

namespace {

double bisect_crossing(const Profile& g, double lo, double hi, double level) {
    double flo = g.g(lo) - level;
    for (int it = 0; it < 100 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = g.g(mid) - level;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

StepProfile grid_breakpoints(const Profile& g, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("grid_breakpoints: epsilon must be > 0");
    std::vector<double> xs{0.0, 1.0};
    for (double x = epsilon; x < 1.0 - 1e-12; x += epsilon) xs.push_back(x);

    // pieces between profile knots are monotone for every shipped shape, so
    // each epsilon level is crossed at most once per piece
    std::vector<double> bounds{0.0};
    for (double kn : g.knots())
        if (kn > 0.0 && kn < 1.0) bounds.push_back(kn);
    bounds.push_back(1.0);
    std::sort(bounds.begin(), bounds.end());

    for (size_t p = 0; p + 1 < bounds.size(); ++p) {
        const double lo = bounds[p], hi = bounds[p + 1];
        const double glo = g.g(lo), ghi = g.g(hi - 1e-12);
        const double gmin = std::min(glo, ghi), gmax = std::max(glo, ghi);
        for (long long q = static_cast<long long>(std::floor(gmin / epsilon)) + 1;
             q * epsilon < gmax; ++q) {
            const double level = static_cast<double>(q) * epsilon;
            if (level <= gmin || level >= gmax) continue;
            xs.push_back(bisect_crossing(g, lo, hi - 1e-12, level));
        }
    }

    std::sort(xs.begin(), xs.end());
    std::vector<double> dedup;
    for (double x : xs)
        if (dedup.empty() || x - dedup.back() > 1e-12) dedup.push_back(x);
    if (dedup.back() != 1.0) dedup.back() = 1.0;

    StepProfile sp;
    sp.epsilon = epsilon;
    sp.breakpoints = std::move(dedup);
    sp.levels.reserve(sp.breakpoints.size());
    for (double x : sp.breakpoints) sp.levels.push_back(g.g(x));

    // diagnostic: within a segment a continuous g may move at most one strip
    for (size_t i = 0; i + 1 < sp.breakpoints.size(); ++i) {
        const double x0 = sp.breakpoints[i], x1 = sp.breakpoints[i + 1];
        const double mid = g.g(0.5 * (x0 + x1));
        const double end = g.g(x1 - 1e-12);
        const double lo = std::min({sp.levels[i], mid, end});
        const double hi = std::max({sp.levels[i], mid, end});
        if (hi - lo > epsilon + 1e-6) {
            std::ostringstream os;
            os << "grid_breakpoints: missed a level crossing in [" << x0 << ", " << x1
               << "] (variation " << (hi - lo) << " > epsilon)";
            throw std::runtime_error(os.str());
        }
    }
    return sp;
}

SlopeOneStepProfile step_interpolant(const StepProfile& sp) {
    std::vector<double> levels(sp.levels.begin(), sp.levels.end());
    return SlopeOneStepProfile(sp.breakpoints, levels, sp.epsilon);
}

SubsetMaxState::SubsetMaxState(long long q, long long m) : need(q), remaining(m) {
    if (q < 0 || q > m) throw std::invalid_argument("SubsetMaxState: need 0 <= q <= m");
}

bool SubsetMaxState::admit(const TaggedValue& v, Rng& rng) {
    if (remaining <= 0) throw std::logic_error("SubsetMaxState: admit past the prefix");
    const bool include =
        static_cast<long long>(rng.next_below(static_cast<uint64_t>(remaining))) < need;
    force(include, v);
    return include;
}

void SubsetMaxState::force(bool include, const TaggedValue& v) {
    --remaining;
    if (include) {
        --need;
        if (outranks(v, best, TieBreaker::Jitter)) best = v;
    }
}

double on_the_fly_subset_max(ValueFeed& feed, long long m, long long q, Rng& rng) {
    if (q < 0 || q > m) throw std::invalid_argument("on_the_fly_subset_max: need 0 <= q <= m");
    SubsetMaxState st(q, m);
    double v = 0.0;
    for (long long i = 0; i < m; ++i) {
        if (!feed.next(v)) throw std::runtime_error("on_the_fly_subset_max: feed shorter than m");
        st.admit({v, 0.0}, rng);
    }
    return q == 0 ? 0.0 : st.best.value;
}

RunOutcome run_streaming(const Profile& g, double epsilon, const ProblemInstance& instance,
                         TieBreaker tie, Rng& rng) {
    RandomFeed feed(instance.dist, rng);
    return run_streaming_feed(g, epsilon, feed, instance.n, instance.k, tie, rng);
}

RunOutcome run_streaming_feed(const Profile& g, double epsilon, ValueFeed& feed, int n,
                              long long k, TieBreaker tie, Rng& rng) {
    if (n < 1) throw std::invalid_argument("run_streaming: n must be >= 1");
    if (k < 1) throw std::invalid_argument("run_streaming: needs at least one upfront sample");
    const StepProfile sp = grid_breakpoints(g, epsilon);

    // one threshold state per grid segment that owns at least one step;
    // duplicates keep the rightmost definition
    struct Segment {
        long long first_step;
        long long prefix_len;   // items the subset draws from: k + first_step - 1
        SubsetMaxState state;
    };
    std::vector<Segment> segs;
    for (int i = 0; i + 1 < sp.gamma(); ++i) {
        const long long j0 =
            std::max(1LL, static_cast<long long>(std::ceil(sp.breakpoints[static_cast<size_t>(i)] *
                                                               n -
                                                           1e-9)));
        if (j0 > n) break;
        const long long prefix = k + j0 - 1;
        long long q = static_cast<long long>(
            std::ceil(sp.levels[static_cast<size_t>(i)] * n - 1e-9));
        q = std::clamp(q, 1LL, prefix);
        if (!segs.empty() && segs.back().first_step == j0) segs.pop_back();
        segs.push_back({j0, prefix, SubsetMaxState(q, prefix)});
    }

    // registers: (need, remaining, threshold value, threshold tag) per state
    // plus loop counters, the running threshold pair and segment/feed cursors
    const int stored_cells = 4 * static_cast<int>(segs.size()) + 8;

    size_t active = 0;   // states with index >= active are still collecting
    auto admit_all = [&](const TaggedValue& v) {
        for (size_t s = active; s < segs.size(); ++s) segs[s].state.admit(v, rng);
        while (active < segs.size() && segs[active].state.done()) ++active;
    };

    double raw = 0.0;
    for (long long p = 0; p < k; ++p) {
        if (!feed.next(raw)) throw std::runtime_error("run_streaming: feed exhausted");
        admit_all({raw, rng.next_u01()});
    }

    size_t cur = 0;
    TaggedValue threshold = segs[0].state.best;
    for (int j = 1; j <= n; ++j) {
        if (cur + 1 < segs.size() && j == segs[cur + 1].first_step) {
            ++cur;
            threshold = segs[cur].state.best;
        }
        if (!feed.next(raw)) throw std::runtime_error("run_streaming: feed exhausted");
        const TaggedValue x{raw, rng.next_u01()};
        if (outranks(x, threshold, tie))
            return {j, x.value, j, stored_cells};
        // the slope-1 absorption of in-segment values is implicit: a value
        // that failed the stop test cannot raise the running maximum
        if (active < segs.size()) admit_all(x);
    }
    return {0, 0.0, n, stored_cells};
}

} // namespace prophet
