#pragma once

#include <cstdint>

namespace mfodbo {

/// Deterministic counter-based random stream (splitmix64). The draw sequence
/// is a pure function of the seed, independent of platform and standard
/// library, which is what makes whole runs bit-reproducible.
///
/// One optimizer run owns exactly one stream; the order of draws is part of
/// the run's semantics.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        ++draws_;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

    /// Standard normal via Box-Muller; the paired value is cached so draws
    /// alternate between computing and returning the spare.
    double normal01();

    std::uint64_t draw_count() const { return draws_; }

  private:
    std::uint64_t state_;
    std::uint64_t draws_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace mfodbo
