#include "phasebit/kernels.hpp"

namespace phasebit::kernels {

namespace {

struct Table {
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*matvec)(const double*, std::size_t, std::size_t, const double*, double*);
    void (*quantize_bits)(const double*, std::size_t, double, std::int8_t*);
    double (*pairwise_sum)(const double*, std::size_t);
    const char* name;
};

Table select() {
#if defined(PHASEBIT_HAVE_AVX2_VARIANT)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return {avx2::dot, avx2::axpy, avx2::matvec, avx2::quantize_bits,
                avx2::pairwise_sum, "avx2"};
#endif
    return {scalar::dot, scalar::axpy, scalar::matvec, scalar::quantize_bits,
            scalar::pairwise_sum, "scalar"};
}

const Table& table() {
    static const Table t = select();
    return t;
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
    return table().dot(a, b, n);
}
void axpy(double alpha, const double* x, double* y, std::size_t n) {
    table().axpy(alpha, x, y, n);
}
void matvec(const double* rows, std::size_t m, std::size_t n, const double* x,
            double* out) {
    table().matvec(rows, m, n, x, out);
}
void quantize_bits(const double* z, std::size_t m, double tau,
                   std::int8_t* bits) {
    table().quantize_bits(z, m, tau, bits);
}
double pairwise_sum(const double* x, std::size_t n) {
    return table().pairwise_sum(x, n);
}
const char* active_backend() { return table().name; }

}  // namespace phasebit::kernels
