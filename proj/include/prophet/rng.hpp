#pragma once

#include <cstdint>

namespace prophet {

// SplitMix64 generator. Trials derive independent streams from
// (master seed, stream index), so Monte Carlo results are reproducible
// and do not depend on the order in which trials are scheduled.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(scramble(seed)) {}
    Rng(uint64_t master_seed, uint64_t stream)
        : state_(scramble(master_seed ^ scramble(stream + 0x9e3779b97f4a7c15ull))) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, n), unbiased (Lemire's multiply-shift with rejection)
    uint64_t next_below(uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
        auto lo = static_cast<uint64_t>(m);
        if (lo < n) {
            const uint64_t t = (0 - n) % n;
            while (lo < t) {
                m = static_cast<unsigned __int128>(next_u64()) * n;
                lo = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64);
    }

    bool bernoulli(double p) { return next_u01() < p; }

private:
    static uint64_t scramble(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    uint64_t state_;
};

} // namespace prophet
