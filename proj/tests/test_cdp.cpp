#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "phasebit/cdp.hpp"
#include "phasebit/image_io.hpp"
#include "phasebit/rng.hpp"

using namespace phasebit;
using doctest::Approx;

namespace {
CVec random_cvec(std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    CVec v(n);
    for (auto& z : v) {
        double re, im;
        rng.next_normal_pair(re, im);
        z = {re, im};
    }
    return v;
}

double cnorm(const CVec& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

// Dense representation of the sensing rows: a_i^* = (unnormalized DFT row) D.
std::vector<CVec> dense_rows(const CdpOperator& op) {
    std::vector<CVec> rows(op.m(), CVec(op.n));
    for (std::size_t l = 0; l < op.L; ++l)
        for (std::size_t j = 0; j < op.n; ++j)
            for (std::size_t k = 0; k < op.n; ++k) {
                const double ang = -2.0 * M_PI * static_cast<double>(j * k % op.n) /
                                   static_cast<double>(op.n);
                // row applied as a^* x; store a = conj(row^T)
                rows[l * op.n + j][k] =
                    std::conj(std::polar(1.0, ang) * op.mask(l)[k]);
            }
    return rows;
}
}  // namespace

TEST_CASE("fft examples") {
    CVec e1(4, {0.0, 0.0});
    e1[0] = {1.0, 0.0};
    const CVec f = fft(e1);
    for (const auto& z : f) {
        CHECK(z.real() == Approx(0.5).epsilon(1e-12));
        CHECK(z.imag() == Approx(0.0).scale(1.0));
    }
    CHECK_THROWS_AS(fft(CVec{}), DomainError);

    for (std::size_t n : {4u, 6u, 8u, 15u, 64u}) {
        const CVec v = random_cvec(n, 31 + n);
        const CVec F = fft(v);
        CHECK(cnorm(F) == Approx(cnorm(v)).epsilon(1e-10));  // Parseval
        const CVec back = ifft(F);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(back[i].real() == Approx(v[i].real()).epsilon(1e-10).scale(1.0));
            CHECK(back[i].imag() == Approx(v[i].imag()).epsilon(1e-10).scale(1.0));
        }
    }
}

TEST_CASE("mask entries live in the quaternary alphabet") {
    const auto op = make_cdp_operator(64, 4, 5);
    int counts[4] = {0, 0, 0, 0};
    for (const auto& mval : op.masks) {
        CHECK(std::abs(std::abs(mval) - 1.0) <= 1e-15);
        if (mval.real() > 0.5) ++counts[0];
        else if (mval.real() < -0.5) ++counts[1];
        else if (mval.imag() > 0.5) ++counts[2];
        else ++counts[3];
    }
    for (int c : counts) CHECK(c > 0);
    const auto op2 = make_cdp_operator(64, 4, 5);
    CHECK(op2.masks == op.masks);  // seed determinism
}

TEST_CASE("cdp_quantize examples") {
    // zero signal: all -1
    const auto op = make_cdp_operator(16, 2, 7);
    const auto y0 = cdp_quantize(op, CVec(16, {0.0, 0.0}), Threshold(0.4));
    for (auto b : y0) CHECK(b == -1);

    // n=4, L=1, all-ones mask, x=e1, tau=0.4: all +1
    CdpOperator ones;
    ones.n = 4;
    ones.L = 1;
    ones.masks.assign(4, {1.0, 0.0});
    CVec e1(4, {0.0, 0.0});
    e1[0] = {1.0, 0.0};
    const auto y1 = cdp_quantize(ones, e1, Threshold(0.4));
    for (auto b : y1) CHECK(b == 1);

    // global phase invariance
    const CVec x = random_cvec(16, 8);
    const auto ya = cdp_quantize(op, x, Threshold(2.0));
    CVec xr(x);
    const auto rot = std::polar(1.0, 1.234);
    for (auto& z : xr) z *= rot;
    CHECK(cdp_quantize(op, xr, Threshold(2.0)) == ya);
}

TEST_CASE("wirtinger subgradient hand case at n=1") {
    // a=1, x=0.2 => y=-1 (tau=1); u=2 -> (1/4)(1-(-1)) * 1 * 1 = 0.5
    CdpOperator op;
    op.n = 1;
    op.L = 1;
    op.masks.assign(1, {1.0, 0.0});
    const Threshold tau(1.0);
    const auto y = cdp_quantize(op, CVec{{0.2, 0.0}}, tau);
    CHECK(y == BitVector{-1});
    const CVec g = wirtinger_subgradient(op, tau, y, CVec{{2.0, 0.0}});
    CHECK(g[0].real() == Approx(0.5).epsilon(1e-12));
    CHECK(g[0].imag() == Approx(0.0).scale(1.0));
}

TEST_CASE("matrix-free gradient matches the dense oracle at n=8, L=2") {
    const auto op = make_cdp_operator(8, 2, 9);
    const auto rows = dense_rows(op);
    const Threshold tau(2.0);
    const CVec x = random_cvec(8, 10);
    const auto y = cdp_quantize(op, x, tau);
    const CVec u = random_cvec(8, 11);

    // dense evaluation of (1/(4nL)) sum (sign(|a^*u|-tau) - y) csign(a^*u) a
    CVec ref(8, {0.0, 0.0});
    for (std::size_t i = 0; i < op.m(); ++i) {
        std::complex<double> zi = 0.0;
        for (std::size_t k = 0; k < 8; ++k) zi += std::conj(rows[i][k]) * u[k];
        const double s = std::abs(zi) >= tau.tau ? 1.0 : -1.0;
        const double coef = s - static_cast<double>(y[i]);
        const std::complex<double> cs =
            std::abs(zi) == 0.0 ? std::complex<double>(1.0, 0.0) : zi / std::abs(zi);
        for (std::size_t k = 0; k < 8; ++k)
            ref[k] += coef * cs * rows[i][k] / (4.0 * static_cast<double>(op.m()));
    }
    const CVec g = wirtinger_subgradient(op, tau, y, u);
    for (std::size_t k = 0; k < 8; ++k) {
        CHECK(std::abs(g[k] - ref[k]) <= 1e-10);
    }

    // bits from the dense rows agree too
    for (std::size_t i = 0; i < op.m(); ++i) {
        std::complex<double> zi = 0.0;
        for (std::size_t k = 0; k < 8; ++k) zi += std::conj(rows[i][k]) * x[k];
        CHECK((std::abs(zi) >= tau.tau ? 1 : -1) == y[i]);
    }
}

TEST_CASE("adjoint identity <F D u, v> == <u, D* F* v>") {
    const auto op = make_cdp_operator(16, 3, 12);
    const CVec u = random_cvec(16, 13);
    const CVec v = random_cvec(op.m(), 14);
    const CVec fu = cdp_forward(op, u);
    const CVec av = cdp_adjoint(op, v);
    std::complex<double> lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < op.m(); ++i) lhs += fu[i] * std::conj(v[i]);
    for (std::size_t k = 0; k < 16; ++k) rhs += u[k] * std::conj(av[k]);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(lhs)));
}

TEST_CASE("global unit scalar on the masks leaves the bits unchanged") {
    auto op = make_cdp_operator(16, 2, 15);
    const CVec x = random_cvec(16, 16);
    const Threshold tau(2.0);
    const auto y = cdp_quantize(op, x, tau);
    const auto rot = std::polar(1.0, 0.737);
    for (auto& mval : op.masks) mval *= rot;
    CHECK(cdp_quantize(op, x, tau) == y);
}

TEST_CASE("relative error is invariant under a global phase") {
    const CVec x = random_cvec(32, 17);
    CVec est = random_cvec(32, 18);
    const double e0 = cdp_relative_error(est, x);
    for (auto& z : est) z *= std::polar(1.0, -2.1);
    CHECK(cdp_relative_error(est, x) == Approx(e0).epsilon(1e-12));
    CHECK(cdp_relative_error(x, x) == Approx(0.0).scale(1.0));
}

TEST_CASE("quantize-consistent init is returned unchanged by the descent") {
    const auto op = make_cdp_operator(32, 4, 19);
    const CVec x = random_cvec(32, 20);
    const Threshold tau(Threshold(0.7 * cnorm(x)));
    const auto y = cdp_quantize(op, x, tau);
    // gradient vanishes at x itself
    const CVec g = wirtinger_subgradient(op, tau, y, x);
    for (const auto& z : g) CHECK(std::abs(z) == 0.0);
}

TEST_CASE("degenerate bit vectors raise the typed error") {
    const auto op = make_cdp_operator(16, 2, 21);
    CHECK_THROWS_AS(cdp_spectral_init(op, BitVector(op.m(), -1), Threshold(1.0), 5),
                    NormEstimateUndefined);
}

TEST_CASE("pgm/ppm round trip and psnr") {
    namespace fs = std::filesystem;
    Image img;
    img.width = 7;
    img.height = 5;
    img.bands.assign(3, Vec(35));
    SplitMix64 rng(22);
    for (auto& band : img.bands)
        for (auto& v : band) v = rng.next_uniform();
    const auto dir = fs::temp_directory_path();
    const std::string ppm = (dir / "phasebit_t.ppm").string();
    write_image(img, ppm);
    const Image back = read_image(ppm);
    CHECK(back.width == 7);
    CHECK(back.height == 5);
    CHECK(back.bands.size() == 3);
    for (std::size_t b = 0; b < 3; ++b)
        for (std::size_t p = 0; p < 35; ++p)
            CHECK(std::fabs(back.bands[b][p] - img.bands[b][p]) <= 0.5 / 255.0 + 1e-12);

    Image gray;
    gray.width = 4;
    gray.height = 4;
    gray.bands.assign(1, Vec(16, 0.25));
    const std::string pgm = (dir / "phasebit_t.pgm").string();
    write_image(gray, pgm);
    const Image gback = read_image(pgm);
    CHECK(gback.bands.size() == 1);
    CHECK(psnr(gback.bands[0], gray.bands[0]) > 45.0);
    fs::remove(ppm);
    fs::remove(pgm);
}
