#include "phasebit/cdp.hpp"

#include <cmath>
#include <mutex>
#include <unordered_map>

#include "phasebit/rng.hpp"

namespace phasebit {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Twiddle factors are cached per transform size; FFTs dominate cdp_recover.
const CVec& twiddles(std::size_t n) {
    static std::unordered_map<std::size_t, CVec> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
        CVec w(n / 2);
        for (std::size_t k = 0; k < n / 2; ++k)
            w[k] = std::polar(1.0, -kTwoPi * static_cast<double>(k) / static_cast<double>(n));
        it = cache.emplace(n, std::move(w)).first;
    }
    return it->second;
}

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 Cooley-Tukey, unnormalized.
void fft_pow2(CVec& v) {
    const std::size_t n = v.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(v[i], v[j]);
    }
    const CVec& w = twiddles(n);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> t = v[i + k + len / 2] * w[k * step];
                v[i + k + len / 2] = v[i + k] - t;
                v[i + k] += t;
            }
        }
    }
}

// Direct O(n^2) transform for non powers of two, unnormalized.
CVec dft_direct(const CVec& x) {
    const std::size_t n = x.size();
    CVec out(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::complex<double> s = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            s += x[k] * std::polar(1.0, -kTwoPi * static_cast<double>(j * k % n) / static_cast<double>(n));
        out[j] = s;
    }
    return out;
}

// Unnormalized forward transform F_raw with F_raw = sqrt(n) * F_unitary.
CVec fft_raw(CVec v) {
    if (v.empty()) throw DomainError("fft: empty input");
    if (is_pow2(v.size())) {
        fft_pow2(v);
        return v;
    }
    return dft_direct(v);
}

// Adjoint of F_raw (the unnormalized inverse DFT without the 1/n factor).
CVec ifft_raw_adjoint(CVec v) {
    for (auto& z : v) z = std::conj(z);
    v = fft_raw(std::move(v));
    for (auto& z : v) z = std::conj(z);
    return v;
}

inline std::complex<double> csign(std::complex<double> z) {
    const double a = std::abs(z);
    return a == 0.0 ? std::complex<double>(1.0, 0.0) : z / a;
}

}  // namespace

CVec fft(const CVec& v) {
    CVec out = fft_raw(v);
    const double s = 1.0 / std::sqrt(static_cast<double>(v.size()));
    for (auto& z : out) z *= s;
    return out;
}

CVec ifft(const CVec& v) {
    if (v.empty()) throw DomainError("ifft: empty input");
    CVec out = ifft_raw_adjoint(v);
    const double s = 1.0 / std::sqrt(static_cast<double>(v.size()));
    for (auto& z : out) z *= s;
    return out;
}

CdpOperator make_cdp_operator(std::size_t n, std::size_t L,
                              std::uint64_t seed) {
    if (n == 0 || L == 0) throw DomainError("make_cdp_operator: zero dimensions");
    CdpOperator op;
    op.n = n;
    op.L = L;
    op.seed = seed;
    op.masks.resize(n * L);
    static const std::complex<double> alphabet[4] = {
        {1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
    SplitMix64 rng(seed);
    for (auto& mval : op.masks) mval = alphabet[rng.next_u64() & 3];
    return op;
}

CVec cdp_forward(const CdpOperator& op, const CVec& x) {
    if (x.size() != op.n) throw DimensionError("cdp_forward: dimension mismatch");
    CVec out(op.m());
    CVec tmp(op.n);
    for (std::size_t l = 0; l < op.L; ++l) {
        const auto* d = op.mask(l);
        for (std::size_t k = 0; k < op.n; ++k) tmp[k] = d[k] * x[k];
        CVec z = fft_raw(std::move(tmp));
        std::copy(z.begin(), z.end(), out.begin() + l * op.n);
        tmp = std::move(z);  // reuse storage
    }
    return out;
}

CVec cdp_adjoint(const CdpOperator& op, const CVec& c) {
    if (c.size() != op.m()) throw DimensionError("cdp_adjoint: dimension mismatch");
    CVec out(op.n, {0.0, 0.0});
    CVec tmp(op.n);
    for (std::size_t l = 0; l < op.L; ++l) {
        std::copy(c.begin() + l * op.n, c.begin() + (l + 1) * op.n, tmp.begin());
        CVec z = ifft_raw_adjoint(std::move(tmp));
        const auto* d = op.mask(l);
        for (std::size_t k = 0; k < op.n; ++k) out[k] += std::conj(d[k]) * z[k];
        tmp = std::move(z);
    }
    return out;
}

BitVector cdp_quantize(const CdpOperator& op, const CVec& x, Threshold tau) {
    const CVec z = cdp_forward(op, x);
    BitVector y(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        y[i] = std::abs(z[i]) >= tau.tau ? std::int8_t(1) : std::int8_t(-1);
    return y;
}

CVec wirtinger_subgradient(const CdpOperator& op, Threshold tau,
                           const BitVector& y, const CVec& u) {
    if (y.size() != op.m()) throw DimensionError("wirtinger_subgradient: |y| != nL");
    CVec z = cdp_forward(op, u);
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double s = std::abs(z[i]) >= tau.tau ? 1.0 : -1.0;
        const double coef = s - static_cast<double>(y[i]);
        z[i] = coef == 0.0 ? std::complex<double>(0.0, 0.0) : coef * csign(z[i]);
    }
    CVec g = cdp_adjoint(op, z);
    const double scale = 1.0 / (4.0 * static_cast<double>(op.m()));
    for (auto& v : g) v *= scale;
    return g;
}

double cdp_relative_error(const CVec& est, const CVec& truth) {
    if (est.size() != truth.size())
        throw DimensionError("cdp_relative_error: dimension mismatch");
    double ne = 0.0, nt = 0.0;
    std::complex<double> c = 0.0;
    for (std::size_t i = 0; i < est.size(); ++i) {
        ne += std::norm(est[i]);
        nt += std::norm(truth[i]);
        c += est[i] * std::conj(truth[i]);
    }
    // phi* = arg(<truth, est>) aligns the global phase in closed form.
    const double val = ne + nt - 2.0 * std::abs(c);
    return std::sqrt(std::max(val, 0.0)) / std::sqrt(nt);
}

CVec cdp_spectral_init(const CdpOperator& op, const BitVector& y,
                       Threshold tau, int power_iters) {
    if (y.size() != op.m()) throw DimensionError("cdp_spectral_init: |y| != nL");
    std::size_t plus = 0;
    for (auto b : y) plus += (b > 0);
    const double lam_x = static_cast<double>(plus) / static_cast<double>(y.size());
    if (!(lam_x > 0.0 && lam_x < 1.0))
        throw NormEstimateUndefined("cdp_spectral_init: degenerate bits");
    // |a^* x|^2 is asymptotically Exp(||x||^2), so P(y=+1) = exp(-tau^2/||x||^2).
    const double lam = tau.tau / std::sqrt(std::log(1.0 / lam_x));

    const double inv_m = 1.0 / static_cast<double>(op.m());
    SplitMix64 rng(hash64(op.seed, 0xCD9));
    CVec v(op.n);
    double nrm2 = 0.0;
    for (auto& z : v) {
        double re, im;
        rng.next_normal_pair(re, im);
        z = {re, im};
        nrm2 += std::norm(z);
    }
    double nrm = std::sqrt(nrm2);
    for (auto& z : v) z /= nrm;
    // sum_i a_i a_i^* = m I for CDP rows, so -I <= S <= I and the shift
    // S + I is positive semidefinite with the same leading eigenvector.
    for (int t = 0; t < power_iters; ++t) {
        CVec z = cdp_forward(op, v);
        for (std::size_t i = 0; i < z.size(); ++i)
            z[i] *= static_cast<double>(y[i]);
        CVec w = cdp_adjoint(op, z);
        nrm2 = 0.0;
        for (std::size_t k = 0; k < op.n; ++k) {
            w[k] = w[k] * inv_m + v[k];
            nrm2 += std::norm(w[k]);
        }
        nrm = std::sqrt(nrm2);
        if (nrm < 1e-300) break;
        for (std::size_t k = 0; k < op.n; ++k) v[k] = w[k] / nrm;
    }
    for (auto& z : v) z *= lam;
    return v;
}

CdpResult cdp_recover(const CdpOperator& op, const BitVector& y, Threshold tau,
                      int power_iters, int gd_iters, const CVec* truth) {
    CVec u = cdp_spectral_init(op, y, tau, power_iters);
    const double eta = std::sqrt(2.0 * M_PI * M_E) * tau.tau;
    CdpResult res;
    for (int t = 0; t < gd_iters; ++t) {
        const CVec g = wirtinger_subgradient(op, tau, y, u);
        for (std::size_t k = 0; k < op.n; ++k) u[k] -= eta * g[k];
        res.gd_iters_run = t + 1;
    }
    if (truth) res.rel_error = cdp_relative_error(u, *truth);
    res.estimate = std::move(u);
    return res;
}

}  // namespace phasebit
