#pragma once

#include <cstddef>
#include <utility>

#include "phasebit/types.hpp"

namespace phasebit {

/// Phaseless l2 distance min{||u-v||, ||u+v||}.
double dist(const Vec& u, const Vec& v);

/// Directional error dist(u/||u||, v/||v||). Near-zero norms are an error.
double dist_d(const Vec& u, const Vec& v);

/// Error in norm, | ||u|| - ||v|| |.
double dist_n(const Vec& u, const Vec& v);

std::size_t hamming(const BitVector& y1, const BitVector& y2);

/// || u u^T - v v^T ||_F = sqrt(||u||^4 + ||v||^4 - 2 (u^T v)^2).
double rank1_frob_dist(const Vec& u, const Vec& v);

/// Coordinates of a pair (u, v) in the orthonormal frame spanned by
/// beta1 = (u-v)/||u-v|| and a completing beta2:
///   u = u1 beta1 + u2 beta2,   v = v1 beta1 + u2 beta2,  u1 > v1, u2 >= 0.
struct PairCoordinates {
    double u1;
    double v1;
    double u2;
};

/// Closed-form (u1, v1, u2). Requires u != v; a radicand in [-1e-12, 0) is
/// clamped to 0 (exactly-parallel pair under rounding), more negative is an
/// internal error.
PairCoordinates parameterize_pair(const Vec& u, const Vec& v);

/// The frame itself. beta2 = (<v,v-u>u + <u,u-v>v)/|...| when u, v span a
/// plane; for parallel pairs, the first canonical basis vector not parallel
/// to beta1, Gram-Schmidt'd against it.
std::pair<Vec, Vec> pair_basis(const Vec& u, const Vec& v);

double norm2(const Vec& u);
double inner(const Vec& u, const Vec& v);

}  // namespace phasebit
