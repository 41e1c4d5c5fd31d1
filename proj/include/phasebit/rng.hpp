#pragma once

#include <cstddef>
#include <cstdint>

namespace phasebit {

// SplitMix64 (Steele/Lea/Flood 2014): a counter-based 64-bit generator.
// Output i is fmix(seed + (i+1)*GAMMA), so streams are reproducible and
// seekable across platforms. Normal variates come from the plain (non
// rejection) Box-Muller transform, keeping the draw count per variate fixed.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform on (0, 1]. Never 0, so log() below is safe.
    double next_uniform() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// One Box-Muller pair of independent N(0,1) variates.
    void next_normal_pair(double& z0, double& z1);

    /// Single N(0,1) draw; consumes a full pair.
    double next_normal() {
        double a, b;
        next_normal_pair(a, b);
        return a;
    }

    void fill_gaussian(double* out, std::size_t count);

    /// Integer uniform on [0, bound) by rejection from the top range.
    std::uint64_t next_below(std::uint64_t bound);

  private:
    std::uint64_t state_;
};

/// Seed-mixing for derived streams: chained SplitMix64 finalizer over the
/// fields, so sub-grids of an experiment are reproducible in isolation.
std::uint64_t hash64(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                     std::uint64_t c = 0);

}  // namespace phasebit
