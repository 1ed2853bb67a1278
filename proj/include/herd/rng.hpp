#pragma once

#include <cstdint>
#include <numbers>

#include "herd/vec2.hpp"

namespace herd::rng {

// Counter-based generator built on the SplitMix64 finalizer. Every draw is a
// pure function of (seed, stream, counter), so results do not depend on the
// order in which agents or threads consume randomness. Each stochastic
// subsystem owns a disjoint stream id range (see stream constants below).

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline constexpr std::uint64_t mix(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t hash3(std::uint64_t seed, std::uint64_t stream,
                                     std::uint64_t counter) {
    std::uint64_t x = mix(seed);
    x = mix(x ^ mix(stream));
    x = mix(x ^ mix(counter));
    return x;
}

// Uniform in [0, 1).
inline double u01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return static_cast<double>(hash3(seed, stream, counter) >> 11) * 0x1.0p-53;
}

// Uniformly random unit vector.
inline Vec2 unit_vector(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    const double a = 2.0 * std::numbers::pi * u01(seed, stream, counter);
    return {std::cos(a), std::sin(a)};
}

// Stream id bases. An agent/entity index is added to the base.
inline constexpr std::uint64_t kScenarioStream = 0x1000000000ULL;
inline constexpr std::uint64_t kSheepStream = 0x2000000000ULL;
inline constexpr std::uint64_t kDogStream = 0x3000000000ULL;
inline constexpr std::uint64_t kMmasStream = 0x4000000000ULL;

// Small stateful view over one stream for code that draws sequentially.
class Stream {
  public:
    Stream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

    double u01() { return rng::u01(seed_, stream_, counter_++); }
    Vec2 unit_vector() { return rng::unit_vector(seed_, stream_, counter_++); }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        return hash3(seed_, stream_, counter_++) % n;
    }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

}  // namespace herd::rng
