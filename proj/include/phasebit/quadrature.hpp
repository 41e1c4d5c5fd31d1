#pragma once

#include <functional>
#include <vector>

namespace phasebit {

/// Adaptive Simpson integration of f over [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-10, int max_depth = 40);

/// E[f(g)] for g ~ N(0,1), integrating f(g) phi(g) over [-10, 10] split at
/// the given breakpoints (e.g. sign kinks), each piece to tolerance tol.
double gaussian_expectation(const std::function<double(double)>& f,
                            const std::vector<double>& breakpoints = {},
                            double tol = 1e-10);

/// Coefficients of E S_x = a_x x x^T + b_x I for ||x|| = lambda:
///   a_x = E[sign(lambda |g| - tau) (g^2 - 1)] / lambda^2
///   b_x = E[sign(lambda |g| - tau)]
/// computed by adaptive quadrature with splits at the sign kinks.
struct PopulationCoeffs {
    double a;
    double b;
};
PopulationCoeffs population_coeffs(double lambda, double tau);

}  // namespace phasebit
