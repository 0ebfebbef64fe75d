#pragma once

#include <cstdint>
#include <initializer_list>

namespace chesslab {

// All randomness in the harness flows through this generator so that a run
// replays bit-identically from its seed on any platform. std::mt19937 plus
// the standard distributions would tie reproducibility to one stdlib's
// distribution internals; splitmix64 with rejection sampling does not.

constexpr uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Folds stream identifiers into a master seed to give independent,
/// reproducible substreams (per game, per ply, per attempt, ...).
constexpr uint64_t derive_seed(uint64_t master, std::initializer_list<uint64_t> path) {
    uint64_t s = mix64(master ^ 0x5851f42d4c957f2dULL);
    for (uint64_t p : path)
        s = mix64(s ^ mix64(p + 0x9e3779b97f4a7c15ULL));
    return s;
}

class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
    uint64_t uniform(uint64_t n) {
        if (n <= 1) return 0;
        const uint64_t limit = n * ((~uint64_t{0}) / n);
        uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    /// Uniform double in [0, 1) with 53 bits of precision.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

private:
    uint64_t state_;
};

}  // namespace chesslab
