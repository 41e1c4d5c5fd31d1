#pragma once

#include <optional>

#include "phasebit/sensing.hpp"
#include "phasebit/types.hpp"

namespace phasebit {

/// Symmetric n x n matrix, row-major.
struct SpectralMatrix {
    std::size_t n = 0;
    std::vector<double> a;

    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
};

struct SpectralEstimate {
    Vec direction;         // unit norm
    double norm_estimate;  // > 0
    std::optional<std::vector<std::size_t>> support;

    Vec signal() const {
        Vec x(direction);
        for (auto& v : x) v *= norm_estimate;
        return x;
    }
};

/// S = (1/m) sum_i y_i a_i a_i^T, exactly symmetric.
SpectralMatrix spectral_matrix(const GaussianEnsemble& A, const BitVector& y);

/// Power iteration on M + mu I with the Gershgorin shift mu = max row
/// absolute sum; the dominant eigenvalue of the shifted matrix is the
/// maximal eigenvalue of M. Returns a unit vector.
Vec power_method(const SpectralMatrix& M, int iters, std::uint64_t seed);

/// Standard normal CDF, |error| well below 1e-12.
double phi(double t);

/// Inverse of phi: rational initial guess (Acklam) refined by Newton steps
/// against phi. Requires p in (0,1).
double phi_inv(double p);

/// lambda_hat = fraction of +1 bits; the estimate is -tau / phi_inv(lambda_hat/2).
/// Throws NormEstimateUndefined when every bit agrees.
double norm_estimate(const BitVector& y, Threshold tau);
double norm_estimate_from_fraction(double lambda_hat, Threshold tau);

/// Spectral initialization: direction from the leading eigenvector of
/// spectral_matrix, scale from norm_estimate.
SpectralEstimate si_1bpr(const GaussianEnsemble& A, const BitVector& y,
                         Threshold tau, int power_iters = 50);

/// Indices of the k largest diagonal entries (real value, not absolute);
/// ties keep the lowest index. Returned ascending.
std::vector<std::size_t> support_estimate(const SpectralMatrix& S, int k);

/// Sparse spectral initialization: estimate the support from the diagonal of
/// S, run the power method on S with rows/columns off the support zeroed
/// (computed via the k x k principal submatrix, which has the same nonzero
/// spectrum), scale as in si_1bpr.
SpectralEstimate si_1bspr(const GaussianEnsemble& A, const BitVector& y,
                          Threshold tau, int k, int power_iters = 50);

}  // namespace phasebit
