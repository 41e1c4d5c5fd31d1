#pragma once

#include <optional>

#include "phasebit/objective.hpp"
#include "phasebit/types.hpp"

namespace phasebit {

struct SolverConfig {
    double eta;
    int max_iters;
    std::optional<int> k;  // sparsity; required for BIHT / NBIHT
    double tol = 0.0;      // early stop on iterate movement; 0 = fixed budget
};

struct SolverTrace {
    std::vector<double> iterates_dist;  // dist(x^(t), truth), when truth given
    Vec final;
    int iters_run = 0;
};

/// Default step size sqrt(pi*e/2) * tau.
double default_eta(Threshold tau);

/// Keeps the k entries largest in absolute value, zeroing the rest.
/// Ties keep the lowest index.
Vec hard_threshold(const Vec& u, int k);

/// Gradient descent on the one-sided l1 loss: x <- x - eta * dL(x).
SolverTrace gd_1bpr(const LossContext& ctx, const Vec& x0,
                    const SolverConfig& cfg, const Vec* truth = nullptr);

/// Binary iterative hard thresholding for the sparse problem: gradient step
/// followed by hard_threshold; every iterate is k-sparse.
SolverTrace biht_1bspr(const LossContext& ctx, const Vec& x0,
                       const SolverConfig& cfg, const Vec* truth = nullptr);

/// Baseline for linear one-bit measurements y = sign(Ax):
///   x <- T_k(x - eta * (1/2m) sum_i (sign(a_i^T x) - y_i) a_i),
/// final iterate renormalized to unit norm.
SolverTrace nbiht_baseline(const GaussianEnsemble& A, const BitVector& y,
                           const Vec& x0, const SolverConfig& cfg,
                           const Vec* truth = nullptr);

/// Step-size ratio condition for BIHT near-optimality: the maximum over
/// w in [tau/(1.01 beta), tau/(0.99 alpha)] of
///   |1 - w^3 exp((1-w^2)/2)|  and  |1 - w exp((1-w^2)/2)|
/// must not exceed 0.49.
bool check_ratio_condition(const AnnulusParams& ann, Threshold tau);

/// The underlying maximum, exposed for diagnostics.
double ratio_condition_value(const AnnulusParams& ann, Threshold tau);

}  // namespace phasebit
