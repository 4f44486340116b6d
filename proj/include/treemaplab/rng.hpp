#pragma once

#include <cstdint>
#include <random>

namespace treemaplab {

// Deterministic random source. All randomness in the library flows through
// this wrapper so that results are reproducible across platforms; the
// standard distributions are deliberately avoided because their output is
// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    // Uniform integer in [0, n), n > 0.
    std::uint64_t below(std::uint64_t n) {
        return eng_() % n;
    }

    std::uint64_t next() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

namespace detail {

// splitmix64 finalizer; good avalanche behaviour for seed mixing.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

// Mixes a base seed with stream coordinates so that parallel workers draw
// from independent, reproducible streams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return detail::mix64(detail::mix64(detail::mix64(seed) ^ a) ^ b);
}

}  // namespace treemaplab
