#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace phasebit {

/// Dense real signal; the unknown x and all iterates.
using Vec = std::vector<double>;

/// One-bit measurements, every entry in {-1,+1}.
using BitVector = std::vector<std::int8_t>;

/// Signals live in the annulus { u : alpha <= ||u||_2 <= beta }.
struct AnnulusParams {
    double alpha = 1.0;
    double beta = 1.0;

    AnnulusParams() = default;
    AnnulusParams(double a, double b) : alpha(a), beta(b) {
        if (!(a > 0.0) || !(b >= a))
            throw std::invalid_argument("AnnulusParams: need 0 < alpha <= beta");
    }
};

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Phi^{-1} hit an endpoint: the bit vector was all +1 or all -1.
struct NormEstimateUndefined : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require_same_length(const Vec& u, const Vec& v, const char* what) {
    if (u.size() != v.size())
        throw DimensionError(std::string(what) + ": length mismatch");
}

}  // namespace phasebit
