#include "phasebit/objective.hpp"

#include <cmath>

#include "phasebit/kernels.hpp"

namespace phasebit {

namespace {
inline double sgn(double t) { return t >= 0.0 ? 1.0 : -1.0; }
}  // namespace

double loss(const LossContext& ctx, const Vec& u) {
    const auto& A = ctx.ensemble;
    if (u.size() != A.n) throw DimensionError("loss: dimension mismatch");
    const auto z = apply_ensemble(A, u);
    std::vector<double> terms(A.m);
    for (std::size_t i = 0; i < A.m; ++i) {
        const double margin = -static_cast<double>(ctx.y[i]) * (std::fabs(z[i]) - ctx.tau.tau);
        terms[i] = margin > 0.0 ? margin : 0.0;
    }
    return kernels::pairwise_sum(terms.data(), terms.size()) / static_cast<double>(A.m);
}

Vec subgradient(const LossContext& ctx, const Vec& u) {
    const auto& A = ctx.ensemble;
    if (u.size() != A.n) throw DimensionError("subgradient: dimension mismatch");
    const auto z = apply_ensemble(A, u);
    Vec g(A.n, 0.0);
    const double scale = 1.0 / (2.0 * static_cast<double>(A.m));
    for (std::size_t i = 0; i < A.m; ++i) {
        const double c = (sgn(std::fabs(z[i]) - ctx.tau.tau) - static_cast<double>(ctx.y[i])) * sgn(z[i]);
        if (c != 0.0) kernels::axpy(c * scale, A.row(i), g.data(), A.n);
    }
    return g;
}

Vec h_two_point(const GaussianEnsemble& A, Threshold tau, const Vec& u,
                const Vec& v) {
    if (v.size() != A.n) throw DimensionError("h_two_point: dimension mismatch");
    LossContext ctx(A, tau, quantize(A, v, tau));
    return subgradient(ctx, u);
}

IndexSets index_sets(const GaussianEnsemble& A, Threshold tau, const Vec& u,
                     const Vec& v) {
    if (u.size() != A.n || v.size() != A.n)
        throw DimensionError("index_sets: dimension mismatch");
    const auto zu = apply_ensemble(A, u);
    const auto zv = apply_ensemble(A, v);
    IndexSets s;
    for (std::size_t i = 0; i < A.m; ++i) {
        if (sgn(std::fabs(zu[i]) - tau.tau) != sgn(std::fabs(zv[i]) - tau.tau))
            s.R.push_back(i);
        if (sgn(zu[i]) != sgn(zv[i])) s.L.push_back(i);
    }
    return s;
}

}  // namespace phasebit
