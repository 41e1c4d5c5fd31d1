#include "phasebit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "phasebit/kernels.hpp"
#include "phasebit/metrics.hpp"
#include "phasebit/rng.hpp"

namespace phasebit {

SpectralMatrix spectral_matrix(const GaussianEnsemble& A, const BitVector& y) {
    if (y.size() != A.m) throw DimensionError("spectral_matrix: |y| != m");
    SpectralMatrix S;
    S.n = A.n;
    S.a.assign(A.n * A.n, 0.0);
    const double inv_m = 1.0 / static_cast<double>(A.m);
    // Upper triangle only, mirrored afterwards: symmetric by construction.
    for (std::size_t i = 0; i < A.m; ++i) {
        const double* a = A.row(i);
        const double w = static_cast<double>(y[i]) * inv_m;
        for (std::size_t r = 0; r < A.n; ++r)
            kernels::axpy(w * a[r], a + r, S.a.data() + r * A.n + r, A.n - r);
    }
    for (std::size_t r = 1; r < A.n; ++r)
        for (std::size_t c = 0; c < r; ++c) S.at(r, c) = S.at(c, r);
    return S;
}

namespace {

double max_abs_row_sum(const SpectralMatrix& M) {
    double mu = 0.0;
    for (std::size_t r = 0; r < M.n; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < M.n; ++c) s += std::fabs(M.at(r, c));
        mu = std::max(mu, s);
    }
    return mu;
}

Vec random_unit(std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Vec v(n);
    rng.fill_gaussian(v.data(), n);
    const double nrm = norm2(v);
    for (auto& x : v) x /= nrm;
    return v;
}

}  // namespace

Vec power_method(const SpectralMatrix& M, int iters, std::uint64_t seed) {
    if (iters < 1) throw DomainError("power_method: iters < 1");
    const double mu = max_abs_row_sum(M);
    Vec v = random_unit(M.n, seed);
    Vec w(M.n);
    for (int t = 0; t < iters; ++t) {
        for (std::size_t r = 0; r < M.n; ++r)
            w[r] = kernels::dot(M.a.data() + r * M.n, v.data(), M.n) + mu * v[r];
        const double nrm = norm2(w);
        if (nrm < 1e-300) return v;  // shifted matrix annihilates v; any unit vector is an eigenvector
        for (std::size_t r = 0; r < M.n; ++r) v[r] = w[r] / nrm;
    }
    return v;
}

double phi(double t) { return 0.5 * std::erfc(-t / std::sqrt(2.0)); }

double phi_inv(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("phi_inv: p outside (0,1)");
    // Acklam's rational approximation, |relative error| < 1.15e-9.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1.0 - plow;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= phigh) {
        const double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // Two Newton refinements against phi push the residual to machine level.
    for (int it = 0; it < 2; ++it) {
        const double e = phi(x) - p;
        const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
        if (pdf <= 0.0) break;
        x -= e / pdf;
    }
    return x;
}

double norm_estimate_from_fraction(double lambda_hat, Threshold tau) {
    if (!(lambda_hat > 0.0 && lambda_hat < 1.0))
        throw NormEstimateUndefined("norm_estimate: bit fraction at endpoint");
    return -tau.tau / phi_inv(lambda_hat / 2.0);
}

double norm_estimate(const BitVector& y, Threshold tau) {
    std::size_t plus = 0;
    for (auto b : y) plus += (b > 0);
    return norm_estimate_from_fraction(
        static_cast<double>(plus) / static_cast<double>(y.size()), tau);
}

SpectralEstimate si_1bpr(const GaussianEnsemble& A, const BitVector& y,
                         Threshold tau, int power_iters) {
    const SpectralMatrix S = spectral_matrix(A, y);
    const double lam = norm_estimate(y, tau);
    Vec v = power_method(S, power_iters, hash64(A.seed, 0x5172));
    return {std::move(v), lam, std::nullopt};
}

std::vector<std::size_t> support_estimate(const SpectralMatrix& S, int k) {
    const int n = static_cast<int>(S.n);
    if (k < 1 || k > n) throw DomainError("support_estimate: k out of range");
    std::vector<std::size_t> idx(S.n);
    std::iota(idx.begin(), idx.end(), std::size_t(0));
    std::nth_element(idx.begin(), idx.begin() + k, idx.end(),
                     [&](std::size_t a, std::size_t b) {
                         const double da = S.at(a, a), db = S.at(b, b);
                         return da > db || (da == db && a < b);
                     });
    std::vector<std::size_t> out(idx.begin(), idx.begin() + k);
    std::sort(out.begin(), out.end());
    return out;
}

SpectralEstimate si_1bspr(const GaussianEnsemble& A, const BitVector& y,
                          Threshold tau, int k, int power_iters) {
    if (y.size() != A.m) throw DimensionError("si_1bspr: |y| != m");
    if (k < 1 || k > static_cast<int>(A.n))
        throw DomainError("si_1bspr: k out of range");
    const double inv_m = 1.0 / static_cast<double>(A.m);

    // Diagonal of S suffices for the support rule.
    Vec diag(A.n, 0.0);
    for (std::size_t i = 0; i < A.m; ++i) {
        const double* a = A.row(i);
        const double w = static_cast<double>(y[i]) * inv_m;
        for (std::size_t j = 0; j < A.n; ++j) diag[j] += w * a[j] * a[j];
    }
    std::vector<std::size_t> supp(A.n);
    std::iota(supp.begin(), supp.end(), std::size_t(0));
    std::nth_element(supp.begin(), supp.begin() + k, supp.end(),
                     [&](std::size_t a, std::size_t b) {
                         return diag[a] > diag[b] || (diag[a] == diag[b] && a < b);
                     });
    supp.resize(k);
    std::sort(supp.begin(), supp.end());

    // k x k principal submatrix: same nonzero spectrum as the masked matrix.
    SpectralMatrix Ssub;
    Ssub.n = static_cast<std::size_t>(k);
    Ssub.a.assign(Ssub.n * Ssub.n, 0.0);
    std::vector<double> asub(k);
    for (std::size_t i = 0; i < A.m; ++i) {
        const double* a = A.row(i);
        for (int j = 0; j < k; ++j) asub[j] = a[supp[j]];
        const double w = static_cast<double>(y[i]) * inv_m;
        for (int r = 0; r < k; ++r)
            kernels::axpy(w * asub[r], asub.data() + r,
                          Ssub.a.data() + r * k + r, k - r);
    }
    for (int r = 1; r < k; ++r)
        for (int c = 0; c < r; ++c) Ssub.at(r, c) = Ssub.at(c, r);

    const Vec vsub = power_method(Ssub, power_iters, hash64(A.seed, 0x5173));
    Vec v(A.n, 0.0);
    for (int j = 0; j < k; ++j) v[supp[j]] = vsub[j];
    const double lam = norm_estimate(y, tau);
    return {std::move(v), lam, std::move(supp)};
}

}  // namespace phasebit
