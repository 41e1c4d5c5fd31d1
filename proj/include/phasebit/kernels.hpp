#pragma once

#include <cstddef>
#include <cstdint>

// Hot inner loops over the m measurement rows: dot products, axpy
// accumulation, row-major matvec, threshold quantization and tree-structured
// reduction. Each kernel has a scalar reference implementation and an AVX2+FMA
// variant; the dispatched entry points below bind to the best variant the CPU
// supports, once, at first use. The two variants are equivalence-tested
// against each other (<= 1e-12 relative).

namespace phasebit::kernels {

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void matvec(const double* rows, std::size_t m, std::size_t n, const double* x,
            double* out);
void quantize_bits(const double* z, std::size_t m, double tau,
                   std::int8_t* bits);
double pairwise_sum(const double* x, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define PHASEBIT_HAVE_AVX2_VARIANT 1
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void matvec(const double* rows, std::size_t m, std::size_t n, const double* x,
            double* out);
void quantize_bits(const double* z, std::size_t m, double tau,
                   std::int8_t* bits);
double pairwise_sum(const double* x, std::size_t n);
}  // namespace avx2
#endif

double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void matvec(const double* rows, std::size_t m, std::size_t n, const double* x,
            double* out);
void quantize_bits(const double* z, std::size_t m, double tau,
                   std::int8_t* bits);
double pairwise_sum(const double* x, std::size_t n);

/// Name of the variant the dispatcher selected ("avx2" or "scalar").
const char* active_backend();

}  // namespace phasebit::kernels
