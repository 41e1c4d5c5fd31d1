#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "phasebit/kernels.hpp"
#include "phasebit/rng.hpp"

using namespace phasebit;

namespace {
std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
    std::vector<double> v(n);
    SplitMix64 rng(seed);
    rng.fill_gaussian(v.data(), n);
    return v;
}
}  // namespace

TEST_CASE("dispatched kernels match the scalar reference") {
    std::printf("kernel backend: %s\n", kernels::active_backend());
    for (std::size_t n : {1u, 3u, 7u, 16u, 33u, 500u, 4097u}) {
        const auto a = random_vec(n, 11 + n);
        const auto b = random_vec(n, 29 + n);

        const double ds = kernels::scalar::dot(a.data(), b.data(), n);
        const double dd = kernels::dot(a.data(), b.data(), n);
        CHECK(std::fabs(ds - dd) <= 1e-12 * (std::fabs(ds) + 1.0));

        auto ys = a, yd = a;
        kernels::scalar::axpy(0.37, b.data(), ys.data(), n);
        kernels::axpy(0.37, b.data(), yd.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::fabs(ys[i] - yd[i]) <= 1e-12 * (std::fabs(ys[i]) + 1.0));

        const double ss = kernels::scalar::pairwise_sum(a.data(), n);
        const double sd = kernels::pairwise_sum(a.data(), n);
        CHECK(std::fabs(ss - sd) <= 1e-12 * (std::fabs(ss) + 1.0));

        std::vector<std::int8_t> bs(n), bd(n);
        kernels::scalar::quantize_bits(a.data(), n, 0.7, bs.data());
        kernels::quantize_bits(a.data(), n, 0.7, bd.data());
        CHECK(bs == bd);
    }
}

TEST_CASE("matvec equals per-row dot products") {
    const std::size_t m = 37, n = 19;
    const auto rows = random_vec(m * n, 5);
    const auto x = random_vec(n, 6);
    std::vector<double> out(m), ref(m);
    kernels::matvec(rows.data(), m, n, x.data(), out.data());
    for (std::size_t i = 0; i < m; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += rows[i * n + j] * x[j];
        ref[i] = s;
    }
    for (std::size_t i = 0; i < m; ++i)
        CHECK(std::fabs(out[i] - ref[i]) <= 1e-12 * (std::fabs(ref[i]) + 1.0));
}

TEST_CASE("pairwise sum stays within 1e-12 relative of sequential at 1e6 terms") {
    const std::size_t n = 1000000;
    auto v = random_vec(n, 99);
    for (auto& x : v) x = x * x;  // positive terms, conditioning ~1
    double seq = 0.0;
    for (double x : v) seq += x;
    const double pw = kernels::pairwise_sum(v.data(), n);
    CHECK(std::fabs(pw - seq) <= 1e-12 * std::fabs(seq));
}

TEST_CASE("quantize_bits boundary uses sign(0) = +1") {
    const double z[4] = {0.7, -0.7, 0.69999999, 0.0};
    std::vector<std::int8_t> b(4);
    kernels::quantize_bits(z, 4, 0.7, b.data());
    CHECK(b[0] == 1);   // |z| == tau counts as +1
    CHECK(b[1] == 1);
    CHECK(b[2] == -1);
    CHECK(b[3] == -1);
}
