#include "phasebit/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "phasebit/kernels.hpp"

namespace phasebit {

double norm2(const Vec& u) {
    return std::sqrt(kernels::dot(u.data(), u.data(), u.size()));
}

double inner(const Vec& u, const Vec& v) {
    require_same_length(u, v, "inner");
    return kernels::dot(u.data(), v.data(), u.size());
}

double dist(const Vec& u, const Vec& v) {
    require_same_length(u, v, "dist");
    double minus = 0.0, plus = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = u[i] - v[i];
        const double s = u[i] + v[i];
        minus += d * d;
        plus += s * s;
    }
    return std::sqrt(std::min(minus, plus));
}

double dist_d(const Vec& u, const Vec& v) {
    require_same_length(u, v, "dist_d");
    const double nu = norm2(u), nv = norm2(v);
    if (nu < 1e-12 || nv < 1e-12)
        throw DomainError("dist_d: zero-norm input");
    Vec un(u), vn(v);
    for (auto& x : un) x /= nu;
    for (auto& x : vn) x /= nv;
    return dist(un, vn);
}

double dist_n(const Vec& u, const Vec& v) {
    require_same_length(u, v, "dist_n");
    return std::fabs(norm2(u) - norm2(v));
}

std::size_t hamming(const BitVector& y1, const BitVector& y2) {
    if (y1.size() != y2.size()) throw DimensionError("hamming: length mismatch");
    std::size_t d = 0;
    for (std::size_t i = 0; i < y1.size(); ++i) d += (y1[i] != y2[i]);
    return d;
}

double rank1_frob_dist(const Vec& u, const Vec& v) {
    require_same_length(u, v, "rank1_frob_dist");
    const double nu2 = inner(u, u), nv2 = inner(v, v), uv = inner(u, v);
    const double val = nu2 * nu2 + nv2 * nv2 - 2.0 * uv * uv;
    return std::sqrt(std::max(val, 0.0));
}

PairCoordinates parameterize_pair(const Vec& u, const Vec& v) {
    require_same_length(u, v, "parameterize_pair");
    if (u == v) throw DomainError("parameterize_pair: u == v has no frame");
    Vec d(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) d[i] = u[i] - v[i];
    const double nd = norm2(d);
    const double u1 = inner(u, d) / nd;
    const double v1 = inner(v, d) / nd;
    const double nu2 = inner(u, u), nv2 = inner(v, v), uv = inner(u, v);
    double rad = nu2 * nv2 - uv * uv;
    if (rad < 0.0) {
        if (rad < -1e-12)
            throw std::logic_error("parameterize_pair: radicand below -1e-12");
        rad = 0.0;
    }
    return {u1, v1, std::sqrt(rad) / nd};
}

std::pair<Vec, Vec> pair_basis(const Vec& u, const Vec& v) {
    require_same_length(u, v, "pair_basis");
    if (u == v) throw DomainError("pair_basis: u == v has no frame");
    const std::size_t n = u.size();
    Vec beta1(n);
    for (std::size_t i = 0; i < n; ++i) beta1[i] = u[i] - v[i];
    const double nd = norm2(beta1);
    for (auto& x : beta1) x /= nd;

    Vec vmu(n);  // v - u
    for (std::size_t i = 0; i < n; ++i) vmu[i] = v[i] - u[i];
    const double cu = inner(v, vmu);   // <v, v-u>
    const double cv = -inner(u, vmu);  // <u, u-v>
    Vec beta2(n);
    for (std::size_t i = 0; i < n; ++i) beta2[i] = cu * u[i] + cv * v[i];
    double nb = norm2(beta2);
    if (nb > 1e-12 * nd * std::max(norm2(u), norm2(v))) {
        for (auto& x : beta2) x /= nb;
        return {beta1, beta2};
    }
    // Parallel pair: first canonical vector not aligned with beta1, one
    // Gram-Schmidt step.
    for (std::size_t j = 0; j < n; ++j) {
        Vec cand(n, 0.0);
        cand[j] = 1.0;
        const double proj = inner(cand, beta1);
        for (std::size_t i = 0; i < n; ++i) cand[i] -= proj * beta1[i];
        const double nc = norm2(cand);
        if (nc > 1e-8) {
            for (auto& x : cand) x /= nc;
            return {beta1, cand};
        }
    }
    throw std::logic_error("pair_basis: no orthogonal completion found");
}

}  // namespace phasebit
