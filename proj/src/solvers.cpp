#include "phasebit/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "phasebit/kernels.hpp"
#include "phasebit/metrics.hpp"

namespace phasebit {

double default_eta(Threshold tau) {
    return std::sqrt(M_PI * M_E / 2.0) * tau.tau;
}

Vec hard_threshold(const Vec& u, int k) {
    const int n = static_cast<int>(u.size());
    if (k < 1 || k > n) throw DomainError("hard_threshold: k out of range");
    if (k == n) return u;
    std::vector<int> idx(u.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::nth_element(idx.begin(), idx.begin() + k, idx.end(), [&](int a, int b) {
        const double fa = std::fabs(u[a]), fb = std::fabs(u[b]);
        return fa > fb || (fa == fb && a < b);
    });
    Vec out(u.size(), 0.0);
    for (int j = 0; j < k; ++j) out[idx[j]] = u[idx[j]];
    return out;
}

namespace {

double movement(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

template <typename Step>
SolverTrace iterate(const Vec& x0, const SolverConfig& cfg, const Vec* truth,
                    Step step) {
    SolverTrace tr;
    Vec x = x0;
    Vec prev(x.size());
    for (int t = 1; t <= cfg.max_iters; ++t) {
        prev = x;
        step(x);
        tr.iters_run = t;
        if (truth) tr.iterates_dist.push_back(dist(x, *truth));
        if (movement(x, prev) <= cfg.tol) break;
    }
    tr.final = std::move(x);
    return tr;
}

}  // namespace

SolverTrace gd_1bpr(const LossContext& ctx, const Vec& x0,
                    const SolverConfig& cfg, const Vec* truth) {
    if (x0.size() != ctx.ensemble.n)
        throw DimensionError("gd_1bpr: dimension mismatch");
    if (cfg.k) throw DomainError("gd_1bpr: cfg.k must be absent");
    return iterate(x0, cfg, truth, [&](Vec& x) {
        const Vec g = subgradient(ctx, x);
        kernels::axpy(-cfg.eta, g.data(), x.data(), x.size());
    });
}

SolverTrace biht_1bspr(const LossContext& ctx, const Vec& x0,
                       const SolverConfig& cfg, const Vec* truth) {
    if (x0.size() != ctx.ensemble.n)
        throw DimensionError("biht_1bspr: dimension mismatch");
    if (!cfg.k) throw DomainError("biht_1bspr: missing sparsity k");
    const int k = *cfg.k;
    // Algorithm starts from a k-sparse point; threshold on entry.
    const Vec start = hard_threshold(x0, k);
    return iterate(start, cfg, truth, [&](Vec& x) {
        const Vec g = subgradient(ctx, x);
        kernels::axpy(-cfg.eta, g.data(), x.data(), x.size());
        x = hard_threshold(x, k);
    });
}

SolverTrace nbiht_baseline(const GaussianEnsemble& A, const BitVector& y,
                           const Vec& x0, const SolverConfig& cfg,
                           const Vec* truth) {
    if (x0.size() != A.n) throw DimensionError("nbiht: dimension mismatch");
    if (y.size() != A.m) throw DimensionError("nbiht: |y| != m");
    if (!cfg.k) throw DomainError("nbiht: missing sparsity k");
    const int k = *cfg.k;
    const double scale = 1.0 / (2.0 * static_cast<double>(A.m));
    const Vec start = hard_threshold(x0, k);
    SolverTrace tr = iterate(start, cfg, truth, [&](Vec& x) {
        const auto z = apply_ensemble(A, x);
        Vec g(A.n, 0.0);
        for (std::size_t i = 0; i < A.m; ++i) {
            const double c = (z[i] >= 0.0 ? 1.0 : -1.0) - static_cast<double>(y[i]);
            if (c != 0.0) kernels::axpy(c * scale, A.row(i), g.data(), A.n);
        }
        kernels::axpy(-cfg.eta, g.data(), x.data(), x.size());
        x = hard_threshold(x, k);
    });
    const double nrm = norm2(tr.final);
    if (nrm > 0.0)
        for (auto& v : tr.final) v /= nrm;
    return tr;
}

namespace {

// Dense grid plus golden-section refinement around the best grid cell.
template <typename F>
double maximize_1d(F f, double lo, double hi, int grid_pts) {
    if (hi < lo) std::swap(lo, hi);
    if (hi == lo) return f(lo);
    double best = -1.0;
    int best_i = 0;
    for (int i = 0; i < grid_pts; ++i) {
        const double w = lo + (hi - lo) * static_cast<double>(i) / (grid_pts - 1);
        const double v = f(w);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    double a = lo + (hi - lo) * static_cast<double>(std::max(best_i - 1, 0)) / (grid_pts - 1);
    double b = lo + (hi - lo) * static_cast<double>(std::min(best_i + 1, grid_pts - 1)) / (grid_pts - 1);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, std::fabs(b)); ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return std::max({best, fc, fd});
}

}  // namespace

double ratio_condition_value(const AnnulusParams& ann, Threshold tau) {
    const double lo = tau.tau / (1.01 * ann.beta);
    const double hi = tau.tau / (0.99 * ann.alpha);
    auto f1 = [](double w) { return std::fabs(1.0 - w * w * w * std::exp((1.0 - w * w) / 2.0)); };
    auto f2 = [](double w) { return std::fabs(1.0 - w * std::exp((1.0 - w * w) / 2.0)); };
    return std::max(maximize_1d(f1, lo, hi, 10000),
                    maximize_1d(f2, lo, hi, 10000));
}

bool check_ratio_condition(const AnnulusParams& ann, Threshold tau) {
    return ratio_condition_value(ann, tau) <= 0.49;
}

}  // namespace phasebit
