// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma on x86_64 only; entry is gated by the runtime dispatcher.

#include "phasebit/kernels.hpp"

#if defined(PHASEBIT_HAVE_AVX2_VARIANT)

#include <immintrin.h>

#include <cmath>

namespace phasebit::kernels::avx2 {

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    __m256d acc3 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
        acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8), _mm256_loadu_pd(b + i + 8), acc2);
        acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12), _mm256_loadu_pd(b + i + 12), acc3);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    __m256d acc = _mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3));
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    lo = _mm_add_pd(lo, hi);
    double s = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                                                _mm256_loadu_pd(y + i)));
        _mm256_storeu_pd(y + i + 4, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i + 4),
                                                    _mm256_loadu_pd(y + i + 4)));
    }
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                                                _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void matvec(const double* rows, std::size_t m, std::size_t n, const double* x,
            double* out) {
    for (std::size_t i = 0; i < m; ++i) out[i] = dot(rows + i * n, x, n);
}

void quantize_bits(const double* z, std::size_t m, double tau,
                   std::int8_t* bits) {
    const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFll));
    const __m256d vtau = _mm256_set1_pd(tau);
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        const __m256d a = _mm256_and_pd(_mm256_loadu_pd(z + i), abs_mask);
        const int mask = _mm256_movemask_pd(_mm256_cmp_pd(a, vtau, _CMP_GE_OQ));
        bits[i] = (mask & 1) ? 1 : -1;
        bits[i + 1] = (mask & 2) ? 1 : -1;
        bits[i + 2] = (mask & 4) ? 1 : -1;
        bits[i + 3] = (mask & 8) ? 1 : -1;
    }
    for (; i < m; ++i)
        bits[i] = std::fabs(z[i]) >= tau ? std::int8_t(1) : std::int8_t(-1);
}

namespace {
double sum_leaf(const double* x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
    }
    __m256d acc = _mm256_add_pd(acc0, acc1);
    __m128d lo = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
    double s = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
    for (; i < n; ++i) s += x[i];
    return s;
}

double pairwise_block(const double* x, std::size_t n) {
    if (n <= 64) return sum_leaf(x, n);
    const std::size_t half = n / 2;
    return pairwise_block(x, half) + pairwise_block(x + half, n - half);
}
}  // namespace

double pairwise_sum(const double* x, std::size_t n) {
    return pairwise_block(x, n);
}

}  // namespace phasebit::kernels::avx2

#endif  // PHASEBIT_HAVE_AVX2_VARIANT
