#pragma once

#include "phasebit/sensing.hpp"
#include "phasebit/types.hpp"

namespace phasebit {

/// The tuple (A, tau, y) defining the one-sided l1 loss
///   L(u) = (1/m) sum_i max{0, -y_i (|a_i^T u| - tau)}.
struct LossContext {
    const GaussianEnsemble& ensemble;
    Threshold tau;
    BitVector y;

    LossContext(const GaussianEnsemble& A, Threshold t, BitVector bits)
        : ensemble(A), tau(t), y(std::move(bits)) {
        if (y.size() != ensemble.m)
            throw DimensionError("LossContext: |y| != m");
    }
};

double loss(const LossContext& ctx, const Vec& u);

/// dL(u) = (1/2m) sum_i (sign(|a_i^T u| - tau) - y_i) sign(a_i^T u) a_i.
Vec subgradient(const LossContext& ctx, const Vec& u);

/// Two-point form h(u,v): the subgradient with y = quantize(A, v, tau).
Vec h_two_point(const GaussianEnsemble& A, Threshold tau, const Vec& u,
                const Vec& v);

/// R = {i : sign(|a_i^T u|-tau) != sign(|a_i^T v|-tau)} (phaseless
/// separations) and L = {i : sign(a_i^T u) != sign(a_i^T v)}.
struct IndexSets {
    std::vector<std::size_t> R;
    std::vector<std::size_t> L;
};
IndexSets index_sets(const GaussianEnsemble& A, Threshold tau, const Vec& u,
                     const Vec& v);

}  // namespace phasebit
