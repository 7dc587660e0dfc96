#pragma once

#include "prophet/distribution.hpp"
#include "prophet/rng.hpp"

#include <cstdint>
#include <limits>

namespace prophet {

// Tie handling between equal values. JITTER attaches an i.i.d. uniform tag to
// every draw and compares (value, tag) lexicographically, which reproduces the
// rank distribution of a continuous distribution even when values have atoms.
enum class TieBreaker { Jitter, Strict };

struct TaggedValue {
    double value = 0.0;
    double tag = -std::numeric_limits<double>::infinity();
};

inline bool outranks(const TaggedValue& x, const TaggedValue& y, TieBreaker tie) {
    if (tie == TieBreaker::Strict) return x.value > y.value;
    return x.value > y.value || (x.value == y.value && x.tag > y.tag);
}

struct ProblemInstance {
    int n = 1;           // number of online values
    long long k = 0;     // number of upfront samples
    Distribution dist;
    uint64_t seed = 0;

    double beta() const { return static_cast<double>(k) / n; }
};

// Result of one sequential run. stop_index 0 encodes "never stopped"
// (accepted value 0 by convention).
struct RunOutcome {
    int stop_index = 0;
    double accepted_value = 0.0;
    int steps_reached = 0;
    int stored_cells_peak = 0;   // streaming runs only, 0 otherwise

    bool stopped() const { return stop_index > 0; }
};

} // namespace prophet
