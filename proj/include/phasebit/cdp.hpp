#pragma once

#include <complex>
#include <cstdint>
#include <optional>

#include "phasebit/types.hpp"

namespace phasebit {

using CVec = std::vector<std::complex<double>>;

/// Unitary DFT (1/sqrt(n) scale): radix-2 FFT for powers of two, direct
/// O(n^2) transform otherwise. Parseval holds exactly at this scale.
CVec fft(const CVec& v);
CVec ifft(const CVec& v);

/// Coded diffraction patterns: L diagonal masks with i.i.d. entries uniform
/// on {1, -1, j, -j} followed by the DFT. The sensing rows are scaled to
/// norm sqrt(n) (the plain unnormalized DFT of the masked signal), matching
/// E||a_i||^2 = n of the Gaussian ensemble.
struct CdpOperator {
    std::size_t n = 0;
    std::size_t L = 0;
    CVec masks;  // L*n, pattern-major
    std::uint64_t seed = 0;

    std::size_t m() const { return n * L; }
    const std::complex<double>* mask(std::size_t l) const {
        return masks.data() + l * n;
    }
};

CdpOperator make_cdp_operator(std::size_t n, std::size_t L, std::uint64_t seed);

/// z = A x, pattern-major, length nL.
CVec cdp_forward(const CdpOperator& op, const CVec& x);

/// A* c (the conjugate-transpose action), length n.
CVec cdp_adjoint(const CdpOperator& op, const CVec& c);

/// y_i = sign(|a_i^* x| - tau), sign(0) = +1.
BitVector cdp_quantize(const CdpOperator& op, const CVec& x, Threshold tau);

/// Wirtinger subgradient of the one-sided l1 loss, evaluated matrix-free:
///   dL(u) = (1/(4nL)) sum_i (sign(|a_i^* u| - tau) - y_i) csign(a_i^* u) a_i
/// with csign(z) = z/|z| and csign(0) = 1.
CVec wirtinger_subgradient(const CdpOperator& op, Threshold tau,
                           const BitVector& y, const CVec& u);

/// min over unit-modulus phases of ||e^{j phi} est - truth|| / ||truth||.
double cdp_relative_error(const CVec& est, const CVec& truth);

struct CdpResult {
    CVec estimate;
    std::optional<double> rel_error;  // set when truth supplied
    int gd_iters_run = 0;
};

/// Spectral initialization (matrix-free power iteration on S + I, scale from
/// inverting the +1-bit frequency under the circular-Gaussian measurement
/// law) followed by Wirtinger gradient descent with eta = sqrt(2 pi e) tau.
CdpResult cdp_recover(const CdpOperator& op, const BitVector& y, Threshold tau,
                      int power_iters = 50, int gd_iters = 100,
                      const CVec* truth = nullptr);

/// The init alone, exposed for experiments.
CVec cdp_spectral_init(const CdpOperator& op, const BitVector& y,
                       Threshold tau, int power_iters = 50);

}  // namespace phasebit
