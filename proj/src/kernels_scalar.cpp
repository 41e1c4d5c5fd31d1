#include <cmath>

#include "phasebit/kernels.hpp"

namespace phasebit::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void matvec(const double* rows, std::size_t m, std::size_t n, const double* x,
            double* out) {
    for (std::size_t i = 0; i < m; ++i) out[i] = dot(rows + i * n, x, n);
}

void quantize_bits(const double* z, std::size_t m, double tau,
                   std::int8_t* bits) {
    // sign(t) = +1 for t >= 0, so the bit is +1 iff |z_i| >= tau.
    for (std::size_t i = 0; i < m; ++i)
        bits[i] = std::fabs(z[i]) >= tau ? std::int8_t(1) : std::int8_t(-1);
}

namespace {
double pairwise_block(const double* x, std::size_t n) {
    if (n <= 64) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_block(x, half) + pairwise_block(x + half, n - half);
}
}  // namespace

double pairwise_sum(const double* x, std::size_t n) {
    return pairwise_block(x, n);
}

}  // namespace phasebit::kernels::scalar
