#pragma once

#include <cstdint>
#include <utility>

#include "phasebit/sensing.hpp"
#include "phasebit/types.hpp"

namespace phasebit {

/// Monte-Carlo estimate with a normal-approximation 95% interval.
struct SeparationEstimate {
    double p_hat;
    std::size_t samples;
    double half_width;  // 1.96 sqrt(p(1-p)/samples)
};

/// P(sign(|a^T u|-tau) != sign(|a^T v|-tau)) for a ~ N(0, I). The event
/// depends on a only through its projection onto span(u, v), so sampling is
/// two-dimensional regardless of the ambient dimension.
SeparationEstimate mc_separation(const Vec& u, const Vec& v, Threshold tau,
                                 std::size_t samples, std::uint64_t seed);

/// Closed form for parallel pairs: 2 |phi(-tau/||u||) - phi(-tau/||v||)|.
double parallel_separation_exact(double norm_u, double norm_v, Threshold tau);

/// Separation with both magnitudes bounded away from tau:
/// ||a^T u| - tau| >= theta dist(u,v) and likewise for v.
SeparationEstimate mc_theta_well_separation(const Vec& u, const Vec& v,
                                            Threshold tau, double theta,
                                            std::size_t samples,
                                            std::uint64_t seed);

/// Separation by both the phaseless hyperplane and the hyperplane through
/// the origin; bounded by 4 exp(-tau^2 / (2 ||u-v||^2)).
SeparationEstimate mc_double_separation(const Vec& u, const Vec& v,
                                        Threshold tau, std::size_t samples,
                                        std::uint64_t seed);
double double_separation_bound(const Vec& u, const Vec& v, Threshold tau);

/// The contraction functions of the local approximate-invertibility bound:
///   g(a,b) = sqrt(2/pi) exp(-tau^2/(2 s)) (tau^2 a^2 + b^2 s) / s^{5/2}
///   h(a,b) = sqrt(2/pi) exp(-tau^2/(2 s)) a b (s - tau^2) / s^{5/2}
/// with s = a^2 + b^2, and F = sqrt((1 - eta g)^2 + (eta h)^2).
struct ContractionProfile {
    double eta;
    double g;
    double h;
    double F;
};
ContractionProfile contraction_profile(double eta, double a, double b,
                                       Threshold tau);

/// sup of F(sqrt(pi e/2) tau, a, b) over a^2+b^2 in [alpha^2, beta^2]:
/// equals the larger of the 1-D maxima of |1 - w^3 e^{(1-w^2)/2}| and
/// |1 - w e^{(1-w^2)/2}| over w in [tau/beta, tau/alpha].
double sup_F_closed_form(const AnnulusParams& ann, Threshold tau);

/// Exhaustive hamming-distance decoder over a polar grid of the annulus.
/// 2-D only; ties break to the smaller radial then angular index.
Vec hdm_oracle_2d(const GaussianEnsemble& A, const BitVector& y, Threshold tau,
                  const AnnulusParams& ann, int grid_radial, int grid_angular);

/// Labels each polar-grid point of the annulus by its m-bit sign pattern and
/// reports the maximal cell diameter under dist plus the cell count. 2-D only.
struct TessellationAudit {
    double max_cell_diameter;
    std::size_t num_cells;
};
TessellationAudit tessellation_audit_2d(std::size_t m, Threshold tau,
                                        const AnnulusParams& ann,
                                        int grid_radial, int grid_angular,
                                        std::uint64_t seed);

}  // namespace phasebit
