#pragma once

#include "prophet/core.hpp"
#include "prophet/profiles.hpp"

#include <istream>
#include <vector>

namespace prophet {

// Breakpoints of the epsilon-grid: strip edges union the x-coordinates where
// g crosses a multiple of epsilon.
struct StepProfile {
    double epsilon = 0.0;
    std::vector<double> breakpoints;   // x_1 = 0 <= ... <= x_gamma = 1
    std::vector<double> levels;        // g evaluated at each breakpoint
    int gamma() const { return static_cast<int>(breakpoints.size()); }
};

StepProfile grid_breakpoints(const Profile& g, double epsilon);

// The slope-1 interpolant g~ induced by the grid (g <= g~ <= g + 2 eps).
SlopeOneStepProfile step_interpolant(const StepProfile& sp);

// Pull-based value feed; files or sockets can back it.
class ValueFeed {
public:
    virtual ~ValueFeed() = default;
    virtual bool next(double& out) = 0;   // false when exhausted
    long long consumed() const { return consumed_; }

protected:
    long long consumed_ = 0;
};

class RandomFeed final : public ValueFeed {
public:
    RandomFeed(const Distribution& dist, Rng& rng) : dist_(&dist), rng_(&rng) {}
    bool next(double& out) override {
        out = dist_->sample(*rng_);
        ++consumed_;
        return true;
    }

private:
    const Distribution* dist_;
    Rng* rng_;
};

class VectorFeed final : public ValueFeed {
public:
    explicit VectorFeed(std::vector<double> values) : values_(std::move(values)) {}
    bool next(double& out) override {
        if (static_cast<size_t>(consumed_) >= values_.size()) return false;
        out = values_[static_cast<size_t>(consumed_)];
        ++consumed_;
        return true;
    }

private:
    std::vector<double> values_;
};

// Reads one whitespace-separated value at a time.
class FileFeed final : public ValueFeed {
public:
    explicit FileFeed(std::istream& in) : in_(&in) {}
    bool next(double& out) override {
        if (!(*in_ >> out)) return false;
        ++consumed_;
        return true;
    }

private:
    std::istream* in_;
};

// Maximum of a uniform random size-q subset of a stream prefix, built on the
// fly: position included with probability (1-bits still needed) / (positions
// still to come). O(1) state, exact uniformity over all C(m, q) subsets.
struct SubsetMaxState {
    long long need = 0;
    long long remaining = 0;
    TaggedValue best{0.0, -std::numeric_limits<double>::infinity()};

    SubsetMaxState() = default;
    SubsetMaxState(long long q, long long m);

    bool done() const { return remaining == 0; }
    // decides inclusion with an exact integer coin; returns the decision
    bool admit(const TaggedValue& v, Rng& rng);
    // deterministic transition (exhaustive enumeration in tests)
    void force(bool include, const TaggedValue& v);
};

// Consumes exactly m values from the feed; returns the subset maximum
// (0 when q = 0). Throws if the feed is shorter than m.
double on_the_fly_subset_max(ValueFeed& feed, long long m, long long q, Rng& rng);

// Single-pass streaming run of the MRS rule for g at grid width epsilon.
// One threshold per grid segment, computed by a SubsetMaxState over the
// stream prefix; all segment states run concurrently from the start of the
// stream, each frozen once its segment begins. stored_cells_peak counts
// scalar registers and is independent of n.
RunOutcome run_streaming(const Profile& g, double epsilon, const ProblemInstance& instance,
                         TieBreaker tie, Rng& rng);

RunOutcome run_streaming_feed(const Profile& g, double epsilon, ValueFeed& feed, int n,
                              long long k, TieBreaker tie, Rng& rng);

} // namespace prophet
