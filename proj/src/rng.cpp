#include "phasebit/rng.hpp"

#include <cmath>

namespace phasebit {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

void SplitMix64::next_normal_pair(double& z0, double& z1) {
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    z0 = r * std::cos(kTwoPi * u2);
    z1 = r * std::sin(kTwoPi * u2);
}

void SplitMix64::fill_gaussian(double* out, std::size_t count) {
    std::size_t i = 0;
    for (; i + 1 < count; i += 2) next_normal_pair(out[i], out[i + 1]);
    if (i < count) {
        double a, b;
        next_normal_pair(a, b);
        out[i] = a;
    }
}

std::uint64_t SplitMix64::next_below(std::uint64_t bound) {
    // Lemire-style rejection keeps the draw unbiased.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = next_u64();
        if (r >= threshold) return r % bound;
    }
}

std::uint64_t hash64(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                     std::uint64_t c) {
    auto fmix = [](std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    };
    std::uint64_t h = fmix(seed + 0x9E3779B97F4A7C15ull);
    h = fmix(h ^ (a + 0x9E3779B97F4A7C15ull));
    h = fmix(h ^ (b + 0x3C6EF372FE94F82Bull));
    h = fmix(h ^ (c + 0x78DDE6E5FD29F05Bull));
    return h;
}

}  // namespace phasebit
