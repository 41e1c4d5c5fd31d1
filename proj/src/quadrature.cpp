#include "phasebit/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace phasebit {

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa,
               double b, double fb, double& fm) {
    const double m = 0.5 * (a + b);
    fm = f(m);
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa,
             double b, double fb, double m, double fm, double whole,
             double tol, int depth) {
    double fl, fr;
    const double left = simpson(f, a, fa, m, fm, fl);
    const double right = simpson(f, m, fm, b, fb, fr);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt(f, a, fa, m, fm, 0.5 * (a + m), fl, left, 0.5 * tol, depth - 1) +
           adapt(f, m, fm, b, fb, 0.5 * (m + b), fr, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b);
    double fm;
    const double whole = simpson(f, a, fa, b, fb, fm);
    return adapt(f, a, fa, b, fb, 0.5 * (a + b), fm, whole, tol, max_depth);
}

double gaussian_expectation(const std::function<double(double)>& f,
                            const std::vector<double>& breakpoints,
                            double tol) {
    auto integrand = [&](double g) {
        return f(g) * std::exp(-0.5 * g * g) / std::sqrt(2.0 * M_PI);
    };
    std::vector<double> pts = {-10.0, 10.0};
    for (double b : breakpoints)
        if (b > -10.0 && b < 10.0) pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        total += adaptive_simpson(integrand, pts[i], pts[i + 1], tol);
    return total;
}

PopulationCoeffs population_coeffs(double lambda, double tau) {
    const double kink = tau / lambda;
    auto sgn = [](double t) { return t >= 0.0 ? 1.0 : -1.0; };
    const double a_num = gaussian_expectation(
        [&](double g) { return sgn(lambda * std::fabs(g) - tau) * (g * g - 1.0); },
        {-kink, kink});
    const double b = gaussian_expectation(
        [&](double g) { return sgn(lambda * std::fabs(g) - tau); }, {-kink, kink});
    return {a_num / (lambda * lambda), b};
}

}  // namespace phasebit
