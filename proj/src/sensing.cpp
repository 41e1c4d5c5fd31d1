#include "phasebit/sensing.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>

#include "phasebit/kernels.hpp"
#include "phasebit/rng.hpp"

namespace phasebit {

GaussianEnsemble gaussian_ensemble(std::size_t m, std::size_t n,
                                   std::uint64_t seed) {
    if (m == 0 || n == 0)
        throw DomainError("gaussian_ensemble: zero dimensions");
    GaussianEnsemble A;
    A.m = m;
    A.n = n;
    A.seed = seed;
    A.rows.resize(m * n);
    SplitMix64 rng(seed);
    rng.fill_gaussian(A.rows.data(), A.rows.size());
    return A;
}

std::vector<double> apply_ensemble(const GaussianEnsemble& A, const Vec& u) {
    if (u.size() != A.n)
        throw DimensionError("apply_ensemble: dimension mismatch");
    std::vector<double> z(A.m);
    std::size_t nnz = 0;
    for (double x : u) nnz += (x != 0.0);
    if (nnz * 4 <= A.n) {
        std::fill(z.begin(), z.end(), 0.0);
        for (std::size_t j = 0; j < A.n; ++j) {
            const double xj = u[j];
            if (xj == 0.0) continue;
            const double* col = A.rows.data() + j;
            for (std::size_t i = 0; i < A.m; ++i) z[i] += xj * col[i * A.n];
        }
    } else {
        kernels::matvec(A.rows.data(), A.m, A.n, u.data(), z.data());
    }
    return z;
}

BitVector quantize(const GaussianEnsemble& A, const Vec& x, Threshold tau) {
    const auto z = apply_ensemble(A, x);
    BitVector y(A.m);
    kernels::quantize_bits(z.data(), A.m, tau.tau, y.data());
    return y;
}

BitVector corrupt(const BitVector& y, double zeta, std::uint64_t seed) {
    if (!(zeta >= 0.0 && zeta <= 1.0))
        throw DomainError("corrupt: zeta outside [0,1]");
    const std::size_t m = y.size();
    const std::size_t flips = static_cast<std::size_t>(std::floor(zeta * static_cast<double>(m)));
    BitVector out(y);
    if (flips == 0) return out;
    // Partial Fisher-Yates draws the flip set without replacement.
    std::vector<std::uint32_t> idx(m);
    std::iota(idx.begin(), idx.end(), 0u);
    SplitMix64 rng(seed);
    for (std::size_t j = 0; j < flips; ++j) {
        const std::size_t pick = j + static_cast<std::size_t>(rng.next_below(m - j));
        std::swap(idx[j], idx[pick]);
        out[idx[j]] = static_cast<std::int8_t>(-out[idx[j]]);
    }
    return out;
}

namespace {
constexpr char kMagic[4] = {'P', 'B', '1', 'B'};

template <typename T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}
}  // namespace

void dump_ensemble(const GaussianEnsemble& A, Threshold tau, std::ostream& os) {
    os.write(kMagic, 4);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(A.m));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(A.n));
    put<std::uint64_t>(os, A.seed);
    std::uint64_t tau_bits;
    std::memcpy(&tau_bits, &tau.tau, 8);
    put<std::uint64_t>(os, tau_bits);
    os.write(reinterpret_cast<const char*>(A.rows.data()),
             static_cast<std::streamsize>(A.rows.size() * sizeof(double)));
}

std::pair<GaussianEnsemble, Threshold> load_ensemble(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("load_ensemble: bad magic");
    GaussianEnsemble A;
    A.m = get<std::uint32_t>(is);
    A.n = get<std::uint32_t>(is);
    A.seed = get<std::uint64_t>(is);
    const std::uint64_t tau_bits = get<std::uint64_t>(is);
    double tau;
    std::memcpy(&tau, &tau_bits, 8);
    A.rows.resize(A.m * A.n);
    is.read(reinterpret_cast<char*>(A.rows.data()),
            static_cast<std::streamsize>(A.rows.size() * sizeof(double)));
    if (!is) throw std::runtime_error("load_ensemble: truncated payload");
    return {std::move(A), Threshold(tau)};
}

void dump_ensemble_file(const GaussianEnsemble& A, Threshold tau,
                        const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("dump_ensemble_file: cannot open " + path);
    dump_ensemble(A, tau, os);
}

std::pair<GaussianEnsemble, Threshold> load_ensemble_file(
    const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("load_ensemble_file: cannot open " + path);
    return load_ensemble(is);
}

}  // namespace phasebit
