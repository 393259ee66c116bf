#pragma once

/// \file rng.hpp
/// Counter-based random number generation.  Every draw is a pure function of
/// (seed, counter), so streams can be replayed, split and consumed in any
/// order without shared state.

#include <cstdint>

namespace hardy {

namespace detail {
/// SplitMix64 finalizer (Steele, Lea, Flood).  Bijective 64-bit mix.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}
} // namespace detail

/// Counter-based generator: value(i) = mix(seed_state + i*phi).  The name
/// reported in run configs is "splitmix64-counter".
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : state_(detail::mix64(seed)) {}

    /// Independent substream, keyed deterministically off this stream.
    CounterRng substream(std::uint64_t key) const {
        return CounterRng(state_ ^ detail::mix64(key ^ 0xa02bdbf7bb3c0a7ull));
    }

    std::uint64_t bits(std::uint64_t counter) const {
        return detail::mix64(state_ + counter * 0x9e3779b97f4a7c15ull);
    }

    /// Uniform double in [0,1) with 53 random bits.
    double u01(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    /// Uniform double in (lo, hi).
    double uniform(std::uint64_t counter, double lo, double hi) const {
        return lo + (hi - lo) * u01(counter);
    }

  private:
    explicit CounterRng(std::uint64_t raw_state, int) : state_(raw_state) {}
    std::uint64_t state_;
};

constexpr const char* kRngName = "splitmix64-counter";

} // namespace hardy
