#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "phasebit/types.hpp"

namespace phasebit {

/// Quantization threshold; the paper's tau > 0.
struct Threshold {
    double tau;
    explicit Threshold(double t) : tau(t) {
        if (!(t > 0.0)) throw DomainError("Threshold: tau must be > 0");
    }
};

/// m x n sensing matrix with i.i.d. N(0,1) entries, row-major. Regenerating
/// with the same seed is bit-identical.
struct GaussianEnsemble {
    std::size_t m = 0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::vector<double> rows;  // m*n, row-major

    const double* row(std::size_t i) const { return rows.data() + i * n; }
};

GaussianEnsemble gaussian_ensemble(std::size_t m, std::size_t n,
                                   std::uint64_t seed);

/// A*u. Shared by quantize and the objective so consistent bit patterns stay
/// bit-consistent; takes a column path when u is sparse enough to pay off.
std::vector<double> apply_ensemble(const GaussianEnsemble& A, const Vec& u);

/// y_i = sign(|a_i^T x| - tau), sign(0) = +1.
BitVector quantize(const GaussianEnsemble& A, const Vec& x, Threshold tau);

/// Flips exactly floor(zeta*m) positions, chosen uniformly without
/// replacement from the seeded generator.
BitVector corrupt(const BitVector& y, double zeta, std::uint64_t seed);

// Binary dump: magic "PB1B", u32 m, u32 n, u64 seed, u64 tau bit pattern,
// then m*n row-major little-endian f64.
void dump_ensemble(const GaussianEnsemble& A, Threshold tau, std::ostream& os);
std::pair<GaussianEnsemble, Threshold> load_ensemble(std::istream& is);
void dump_ensemble_file(const GaussianEnsemble& A, Threshold tau,
                        const std::string& path);
std::pair<GaussianEnsemble, Threshold> load_ensemble_file(
    const std::string& path);

}  // namespace phasebit
