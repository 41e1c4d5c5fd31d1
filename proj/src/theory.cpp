#include "phasebit/theory.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "phasebit/metrics.hpp"
#include "phasebit/parallel.hpp"
#include "phasebit/rng.hpp"
#include "phasebit/spectral.hpp"

namespace phasebit {

namespace {

constexpr std::size_t kMcChunk = 1 << 16;

SeparationEstimate finish(std::size_t hits, std::size_t samples) {
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    const double hw = 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    return {p, samples, hw};
}

// Counts samples satisfying pred(s_u, s_v), where (s_u, s_v) are the
// projections a^T u, a^T v realized through the pair frame. Chunk seeds are
// derived from (seed, chunk), so the estimate is thread-count independent
// and two estimators sharing a seed see identical Gaussian draws.
template <typename Pred>
SeparationEstimate mc_pair_event(const Vec& u, const Vec& v,
                                 std::size_t samples, std::uint64_t seed,
                                 Pred pred) {
    if (samples < 1) throw DomainError("mc estimator: samples >= 1 required");
    if (u == v) return {0.0, samples, 0.0};
    const PairCoordinates pc = parameterize_pair(u, v);
    const std::size_t chunks = (samples + kMcChunk - 1) / kMcChunk;
    std::vector<std::size_t> hits(chunks, 0);
    parallel_for(chunks, [&](std::size_t c) {
        SplitMix64 rng(hash64(seed, c));
        const std::size_t lo = c * kMcChunk;
        const std::size_t count = std::min(kMcChunk, samples - lo);
        std::size_t h = 0;
        for (std::size_t i = 0; i < count; ++i) {
            double g1, g2;
            rng.next_normal_pair(g1, g2);
            const double su = g1 * pc.u1 + g2 * pc.u2;
            const double sv = g1 * pc.v1 + g2 * pc.u2;
            h += pred(su, sv);
        }
        hits[c] = h;
    });
    std::size_t total = 0;
    for (auto h : hits) total += h;
    return finish(total, samples);
}

inline bool separated(double su, double sv, double tau) {
    return (std::fabs(su) >= tau) != (std::fabs(sv) >= tau);
}

}  // namespace

SeparationEstimate mc_separation(const Vec& u, const Vec& v, Threshold tau,
                                 std::size_t samples, std::uint64_t seed) {
    const double t = tau.tau;
    return mc_pair_event(u, v, samples, seed, [t](double su, double sv) {
        return separated(su, sv, t);
    });
}

double parallel_separation_exact(double norm_u, double norm_v, Threshold tau) {
    if (!(norm_u > 0.0 && norm_v > 0.0))
        throw DomainError("parallel_separation_exact: norms must be positive");
    return 2.0 * std::fabs(phi(-tau.tau / norm_u) - phi(-tau.tau / norm_v));
}

SeparationEstimate mc_theta_well_separation(const Vec& u, const Vec& v,
                                            Threshold tau, double theta,
                                            std::size_t samples,
                                            std::uint64_t seed) {
    if (theta < 0.0) throw DomainError("theta must be >= 0");
    const double t = tau.tau;
    const double margin = theta * dist(u, v);
    return mc_pair_event(u, v, samples, seed, [=](double su, double sv) {
        return separated(su, sv, t) && std::fabs(std::fabs(su) - t) >= margin &&
               std::fabs(std::fabs(sv) - t) >= margin;
    });
}

SeparationEstimate mc_double_separation(const Vec& u, const Vec& v,
                                        Threshold tau, std::size_t samples,
                                        std::uint64_t seed) {
    const double t = tau.tau;
    return mc_pair_event(u, v, samples, seed, [t](double su, double sv) {
        return separated(su, sv, t) && ((su >= 0.0) != (sv >= 0.0));
    });
}

double double_separation_bound(const Vec& u, const Vec& v, Threshold tau) {
    require_same_length(u, v, "double_separation_bound");
    double d2 = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        d2 += (u[i] - v[i]) * (u[i] - v[i]);
    return 4.0 * std::exp(-tau.tau * tau.tau / (2.0 * d2));
}

ContractionProfile contraction_profile(double eta, double a, double b,
                                       Threshold tau) {
    const double s = a * a + b * b;
    if (s <= 0.0) throw DomainError("contraction_profile: a = b = 0");
    const double t2 = tau.tau * tau.tau;
    const double common = std::sqrt(2.0 / M_PI) * std::exp(-t2 / (2.0 * s)) /
                          (s * s * std::sqrt(s));
    const double g = common * (t2 * a * a + b * b * s);
    const double h = common * a * b * (s - t2);
    const double F = std::sqrt((1.0 - eta * g) * (1.0 - eta * g) +
                               (eta * h) * (eta * h));
    return {eta, g, h, F};
}

namespace {

template <typename F>
double maximize_grid_golden(F f, double lo, double hi, int grid_pts) {
    if (hi < lo) std::swap(lo, hi);
    if (hi == lo) return f(lo);
    double best = -1.0;
    int best_i = 0;
    for (int i = 0; i < grid_pts; ++i) {
        const double w = lo + (hi - lo) * static_cast<double>(i) / (grid_pts - 1);
        const double v = f(w);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    double a = lo + (hi - lo) * static_cast<double>(std::max(best_i - 1, 0)) / (grid_pts - 1);
    double b = lo + (hi - lo) * static_cast<double>(std::min(best_i + 1, grid_pts - 1)) / (grid_pts - 1);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && (b - a) > 1e-14; ++it) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a); fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a); fd = f(d);
        }
    }
    return std::max({best, fc, fd});
}

}  // namespace

double sup_F_closed_form(const AnnulusParams& ann, Threshold tau) {
    const double lo = tau.tau / ann.beta;
    const double hi = tau.tau / ann.alpha;
    auto f1 = [](double w) { return std::fabs(1.0 - w * w * w * std::exp((1.0 - w * w) / 2.0)); };
    auto f2 = [](double w) { return std::fabs(1.0 - w * std::exp((1.0 - w * w) / 2.0)); };
    return std::max(maximize_grid_golden(f1, lo, hi, 10000),
                    maximize_grid_golden(f2, lo, hi, 10000));
}

namespace {

struct PolarGrid {
    std::vector<double> xs, ys;  // flattened grid points, radial-major

    PolarGrid(const AnnulusParams& ann, int nr, int na) {
        if (nr < 1 || na < 1) throw DomainError("polar grid: empty");
        xs.reserve(static_cast<std::size_t>(nr) * na);
        ys.reserve(static_cast<std::size_t>(nr) * na);
        for (int ir = 0; ir < nr; ++ir) {
            const double r = nr == 1 ? ann.alpha
                                     : ann.alpha + (ann.beta - ann.alpha) * ir / (nr - 1.0);
            for (int ia = 0; ia < na; ++ia) {
                const double th = 2.0 * M_PI * ia / na;
                xs.push_back(r * std::cos(th));
                ys.push_back(r * std::sin(th));
            }
        }
    }
};

double dist2d(double ux, double uy, double vx, double vy) {
    const double dm = (ux - vx) * (ux - vx) + (uy - vy) * (uy - vy);
    const double dp = (ux + vx) * (ux + vx) + (uy + vy) * (uy + vy);
    return std::sqrt(std::min(dm, dp));
}

}  // namespace

Vec hdm_oracle_2d(const GaussianEnsemble& A, const BitVector& y, Threshold tau,
                  const AnnulusParams& ann, int grid_radial, int grid_angular) {
    if (A.n != 2) throw DomainError("hdm_oracle_2d: n == 2 required");
    if (y.size() != A.m) throw DimensionError("hdm_oracle_2d: |y| != m");
    const PolarGrid grid(ann, grid_radial, grid_angular);
    const std::size_t npts = grid.xs.size();
    std::vector<std::size_t> dh(npts);
    parallel_for(npts, [&](std::size_t p) {
        const double ux = grid.xs[p], uy = grid.ys[p];
        std::size_t d = 0;
        for (std::size_t i = 0; i < A.m; ++i) {
            const double z = A.rows[2 * i] * ux + A.rows[2 * i + 1] * uy;
            const std::int8_t bit = std::fabs(z) >= tau.tau ? 1 : -1;
            d += (bit != y[i]);
        }
        dh[p] = d;
    });
    std::size_t best = 0;
    for (std::size_t p = 1; p < npts; ++p)
        if (dh[p] < dh[best]) best = p;  // strict < keeps first = lowest (radial, angular) index
    return {grid.xs[best], grid.ys[best]};
}

TessellationAudit tessellation_audit_2d(std::size_t m, Threshold tau,
                                        const AnnulusParams& ann,
                                        int grid_radial, int grid_angular,
                                        std::uint64_t seed) {
    const PolarGrid grid(ann, grid_radial, grid_angular);
    const std::size_t npts = grid.xs.size();

    std::vector<double> rows(2 * m);
    SplitMix64 rng(seed);
    rng.fill_gaussian(rows.data(), rows.size());

    // Pattern of every grid point, packed little-endian into bytes. Points
    // u and -u share a pattern, so grouping by label already folds the
    // antipodal symmetry of the cells.
    const std::size_t stride = (m + 7) / 8;
    std::vector<std::uint8_t> patterns(npts * std::max<std::size_t>(stride, 1), 0);
    parallel_for(npts, [&](std::size_t p) {
        const double ux = grid.xs[p], uy = grid.ys[p];
        std::uint8_t* dst = patterns.data() + p * stride;
        for (std::size_t i = 0; i < m; ++i) {
            const double z = rows[2 * i] * ux + rows[2 * i + 1] * uy;
            if (std::fabs(z) >= tau.tau) dst[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
        }
    });

    std::unordered_map<std::string, std::vector<std::uint32_t>> cells;
    for (std::size_t p = 0; p < npts; ++p) {
        std::string key(reinterpret_cast<const char*>(patterns.data() + p * stride), stride);
        cells[key].push_back(static_cast<std::uint32_t>(p));
    }

    std::vector<const std::vector<std::uint32_t>*> groups;
    groups.reserve(cells.size());
    for (const auto& kv : cells) groups.push_back(&kv.second);
    std::vector<double> diameters(groups.size(), 0.0);
    parallel_for(groups.size(), [&](std::size_t gi) {
        const auto& pts = *groups[gi];
        double dmax = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                dmax = std::max(dmax, dist2d(grid.xs[pts[i]], grid.ys[pts[i]],
                                             grid.xs[pts[j]], grid.ys[pts[j]]));
        diameters[gi] = dmax;
    });
    double dmax = 0.0;
    for (double d : diameters) dmax = std::max(dmax, d);
    return {dmax, cells.size()};
}

}  // namespace phasebit
