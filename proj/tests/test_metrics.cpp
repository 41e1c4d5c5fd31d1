#include <doctest.h>

#include <cmath>

#include "phasebit/metrics.hpp"
#include "phasebit/rng.hpp"

using namespace phasebit;
using doctest::Approx;

namespace {
Vec sample_in_annulus(std::size_t n, double alpha, double beta, SplitMix64& rng) {
    Vec x(n);
    rng.fill_gaussian(x.data(), n);
    const double nrm = norm2(x);
    const double r = alpha + (beta - alpha) * rng.next_uniform();
    for (auto& v : x) v *= r / nrm;
    return x;
}
}  // namespace

TEST_CASE("dist examples") {
    CHECK(dist({3, 4}, {3, 4}) == 0.0);
    CHECK(dist({1, 0}, {-1, 0}) == 0.0);
    CHECK(dist({2, 0}, {0, 1}) == Approx(std::sqrt(5.0)).epsilon(1e-9));
    CHECK_THROWS_AS(dist({1, 2}, {1, 2, 3}), DimensionError);
}

TEST_CASE("dist_d examples") {
    CHECK(dist_d({2, 0}, {5, 0}) == 0.0);
    CHECK(dist_d({1, 0}, {0, 3}) == Approx(std::sqrt(2.0)).epsilon(1e-9));
    CHECK(dist_d({1, 1}, {1, 0}) == Approx(std::sqrt(2.0 - std::sqrt(2.0))).epsilon(1e-9));
    CHECK_THROWS_AS(dist_d({0, 0}, {1, 0}), DomainError);
}

TEST_CASE("dist_n examples") {
    const Vec u{1.5, -2.0};
    CHECK(dist_n(u, u) == 0.0);
    CHECK(dist_n({3, 0}, {0, 1}) == Approx(2.0).epsilon(1e-9));
    CHECK(dist_n({1, 0}, {-1, 0}) == 0.0);
}

TEST_CASE("hamming examples") {
    CHECK(hamming({1, -1}, {1, -1}) == 0);
    CHECK(hamming({1, 1, 1}, {-1, -1, -1}) == 3);
    CHECK(hamming({1, -1, 1, -1}, {1, 1, 1, 1}) == 2);
    CHECK_THROWS_AS(hamming({1}, {1, 1}), DimensionError);
}

TEST_CASE("parameterize_pair examples") {
    auto pc = parameterize_pair({2, 0}, {1, 0});
    CHECK(pc.u1 == Approx(2.0).epsilon(1e-12));
    CHECK(pc.v1 == Approx(1.0).epsilon(1e-12));
    CHECK(pc.u2 == Approx(0.0));

    pc = parameterize_pair({1, 0}, {-1, 0});
    CHECK(pc.u1 == Approx(1.0).epsilon(1e-12));
    CHECK(pc.v1 == Approx(-1.0).epsilon(1e-12));  // equal norms force v1 = -u1
    CHECK(pc.u2 == Approx(0.0));

    pc = parameterize_pair({1, 1}, {0, 1});
    CHECK(pc.u1 == Approx(1.0).epsilon(1e-9));
    CHECK(pc.v1 == Approx(0.0));
    CHECK(pc.u2 == Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(parameterize_pair({1, 2}, {1, 2}), DomainError);
}

TEST_CASE("rank1_frob_dist examples") {
    const Vec u{0.3, -0.7, 2.0};
    CHECK(rank1_frob_dist(u, u) == 0.0);
    CHECK(rank1_frob_dist({1, 0}, {0, 1}) == Approx(std::sqrt(2.0)).epsilon(1e-9));
    CHECK(rank1_frob_dist({1, 0}, {-1, 0}) == 0.0);
}

TEST_CASE("symmetry and sign invariance are exact") {
    SplitMix64 rng(42);
    for (int t = 0; t < 200; ++t) {
        Vec u(5), v(5);
        rng.fill_gaussian(u.data(), 5);
        rng.fill_gaussian(v.data(), 5);
        Vec nv(v);
        for (auto& x : nv) x = -x;
        CHECK(dist(u, v) == dist(v, u));
        CHECK(dist(u, v) == dist(u, nv));
    }
}

TEST_CASE("norm equivalence over the annulus") {
    // max{alpha dist_d, dist_n} <= dist <= beta dist_d + dist_n
    const double alpha = 0.5, beta = 3.0;
    SplitMix64 rng(7);
    for (int t = 0; t < 10000; ++t) {
        const Vec u = sample_in_annulus(4, alpha, beta, rng);
        const Vec v = sample_in_annulus(4, alpha, beta, rng);
        const double d = dist(u, v), dd = dist_d(u, v), dn = dist_n(u, v);
        CHECK(std::max(alpha * dd, dn) <= d + 1e-9);
        CHECK(d <= beta * dd + dn + 1e-9);
    }
}

TEST_CASE("rank-1 equivalence over the annulus") {
    // (1/2beta) ||uu^T - vv^T||_F <= dist <= (1/alpha) ||uu^T - vv^T||_F
    const double alpha = 0.5, beta = 3.0;
    SplitMix64 rng(8);
    for (int t = 0; t < 10000; ++t) {
        const Vec u = sample_in_annulus(4, alpha, beta, rng);
        const Vec v = sample_in_annulus(4, alpha, beta, rng);
        const double d = dist(u, v), rf = rank1_frob_dist(u, v);
        CHECK(rf / (2.0 * beta) <= d + 1e-9);
        CHECK(d <= rf / alpha + 1e-9);
    }
}

TEST_CASE("pair basis reconstructs both points") {
    SplitMix64 rng(9);
    for (int t = 0; t < 500; ++t) {
        Vec u(6), v(6);
        rng.fill_gaussian(u.data(), 6);
        rng.fill_gaussian(v.data(), 6);
        const auto pc = parameterize_pair(u, v);
        const auto [b1, b2] = pair_basis(u, v);
        CHECK(std::fabs(inner(b1, b2)) <= 1e-9);
        CHECK(norm2(b1) == Approx(1.0).epsilon(1e-12));
        CHECK(norm2(b2) == Approx(1.0).epsilon(1e-12));
        for (std::size_t i = 0; i < u.size(); ++i) {
            CHECK(pc.u1 * b1[i] + pc.u2 * b2[i] == Approx(u[i]).epsilon(1e-9).scale(1.0));
            CHECK(pc.v1 * b1[i] + pc.u2 * b2[i] == Approx(v[i]).epsilon(1e-9).scale(1.0));
        }
    }
    // Parallel pair: u2 = 0, reconstruction along beta1 alone.
    const Vec u{2, 0, 0}, v{1, 0, 0};
    const auto pc = parameterize_pair(u, v);
    const auto [b1, b2] = pair_basis(u, v);
    CHECK(pc.u2 == 0.0);
    CHECK(std::fabs(inner(b1, b2)) <= 1e-12);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(pc.u1 * b1[i] == Approx(u[i]).scale(1.0));
        CHECK(pc.v1 * b1[i] == Approx(v[i]).scale(1.0));
    }
}

TEST_CASE("triangle inequality on the quotient space") {
    SplitMix64 rng(10);
    for (int t = 0; t < 2000; ++t) {
        Vec u(4), v(4), w(4);
        rng.fill_gaussian(u.data(), 4);
        rng.fill_gaussian(v.data(), 4);
        rng.fill_gaussian(w.data(), 4);
        CHECK(dist(u, w) <= dist(u, v) + dist(v, w) + 1e-12);
    }
}
