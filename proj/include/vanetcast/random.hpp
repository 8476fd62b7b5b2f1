#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace vanetcast {

// All randomness flows through std::mt19937_64 engines whose output sequence
// is fully specified by the standard, seeded through the splitmix64 mixer
// below. Uniform doubles are built from raw bits instead of
// std::uniform_real_distribution so that results are reproducible across
// standard library implementations.

using Engine = std::mt19937_64;

// splitmix64 step (Vigna's public-domain generator). Advances `state` and
// returns the next output word.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Counter-based stream derivation: (master_seed, stream, substream) -> engine
// seed. Feeding each component through a splitmix64 step gives independent
// streams for e.g. (trial index) or (vehicle count, layout sample) without
// any shared mutable state, so work items can run concurrently and still
// reproduce bit-for-bit.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream,
                                 std::uint64_t substream = 0) {
    std::uint64_t s = master_seed;
    std::uint64_t z = splitmix64_next(s);
    s ^= 0xD1B54A32D192ED03ULL * (stream + 1);
    z ^= splitmix64_next(s);
    s ^= 0x8CB92BA72F3D8DD7ULL * (substream + 1);
    z ^= splitmix64_next(s);
    return z;
}

inline Engine make_engine(std::uint64_t master_seed, std::uint64_t stream,
                          std::uint64_t substream = 0) {
    return Engine(derive_seed(master_seed, stream, substream));
}

// Uniform double strictly inside (0, 1): 53-bit mantissa offset by half a
// step, so 0 and 1 are never returned and Bernoulli(p) is exact at p = 0
// and p = 1.
inline double uniform01(Engine& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

inline bool bernoulli(Engine& rng, double p) { return uniform01(rng) < p; }

// Fair coin from the top bit of one engine output.
inline bool fair_coin(Engine& rng) { return (rng() >> 63) != 0; }

// Unbiased integer in [0, n) by rejection.
inline std::uint64_t uniform_below(Engine& rng, std::uint64_t n) {
    const std::uint64_t rem = (0 - n) % n;  // 2^64 mod n
    for (;;) {
        const std::uint64_t x = rng();
        if (x >= rem) return (x - rem) % n;
    }
}

// Exact Poisson sample. Knuth's product-of-uniforms method, splitting large
// means by superposition so exp(-mean) stays within double range.
inline std::uint64_t poisson_sample(Engine& rng, double mean) {
    std::uint64_t total = 0;
    while (mean > 500.0) {
        const double chunk = 500.0;
        const double limit = std::exp(-chunk);
        double prod = uniform01(rng);
        while (prod > limit) {
            prod *= uniform01(rng);
            ++total;
        }
        mean -= chunk;
    }
    const double limit = std::exp(-mean);
    double prod = uniform01(rng);
    while (prod > limit) {
        prod *= uniform01(rng);
        ++total;
    }
    return total;
}

}  // namespace vanetcast
