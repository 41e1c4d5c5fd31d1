#include "phasebit/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "phasebit/kernels.hpp"
#include "phasebit/metrics.hpp"
#include "phasebit/parallel.hpp"
#include "phasebit/rng.hpp"
#include "phasebit/solvers.hpp"
#include "phasebit/spectral.hpp"
#include "phasebit/theory.hpp"

namespace phasebit {

TauRule TauRule::parse(const std::string& text) {
    TauRule r;
    if (text == "sqrt_ab") {
        r.kind = Kind::sqrt_ab;
        return r;
    }
    std::string v = text;
    if (text.rfind("fixed:", 0) == 0) v = text.substr(6);
    std::size_t pos = 0;
    r.value = std::stod(v, &pos);
    if (pos != v.size() || !(r.value > 0.0))
        throw DomainError("TauRule: expected 'fixed:<v>', a positive value, or 'sqrt_ab'");
    r.kind = Kind::fixed;
    return r;
}

double TauRule::resolve(double alpha, double beta) const {
    return kind == Kind::sqrt_ab ? std::sqrt(alpha * beta) : value;
}

std::string TauRule::str() const {
    if (kind == Kind::sqrt_ab) return "sqrt_ab";
    std::ostringstream os;
    os << "fixed:" << value;
    return os.str();
}

void SweepSpec::validate() const {
    if (m_list.empty()) throw DomainError("SweepSpec: m_list empty");
    if (!std::is_sorted(m_list.begin(), m_list.end()))
        throw DomainError("SweepSpec: m_list must be ascending");
    if (trials < 1) throw DomainError("SweepSpec: trials >= 1 required");
    if (solver == Solver::hdm2d && n != 2)
        throw DomainError("SweepSpec: hdm2d requires n == 2");
    if ((solver == Solver::biht1bspr || solver == Solver::nbiht) && !k)
        throw DomainError("SweepSpec: sparse solver requires k");
    if (k && (*k < 1 || static_cast<std::size_t>(*k) > n))
        throw DomainError("SweepSpec: k out of range");
    if (k_signal && (*k_signal < 1 || static_cast<std::size_t>(*k_signal) > n))
        throw DomainError("SweepSpec: k_signal out of range");
}

Vec sample_signal(SignalDist dist, std::size_t n, int k,
                  const AnnulusParams& ann, std::uint64_t seed) {
    SplitMix64 rng(seed);
    const bool sparse =
        dist == SignalDist::sparse_sphere || dist == SignalDist::sparse_annulus;
    const bool annulus =
        dist == SignalDist::annulus || dist == SignalDist::sparse_annulus;
    Vec x(n, 0.0);
    if (sparse) {
        if (k < 1 || static_cast<std::size_t>(k) > n)
            throw DomainError("sample_signal: k out of range");
        // Support uniform over the n-choose-k possibilities.
        std::vector<std::uint32_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0u);
        for (int j = 0; j < k; ++j) {
            const std::size_t pick =
                j + static_cast<std::size_t>(rng.next_below(n - j));
            std::swap(idx[j], idx[pick]);
        }
        Vec g(k);
        rng.fill_gaussian(g.data(), g.size());
        double nrm = 0.0;
        for (double v : g) nrm += v * v;
        nrm = std::sqrt(nrm);
        for (int j = 0; j < k; ++j) x[idx[j]] = g[j] / nrm;
    } else {
        rng.fill_gaussian(x.data(), x.size());
        const double nrm = norm2(x);
        for (auto& v : x) v /= nrm;
    }
    if (annulus) {
        const double lam = ann.alpha + (ann.beta - ann.alpha) * rng.next_uniform();
        for (auto& v : x) v *= lam;
    }
    return x;
}

namespace {

SignalDist dist_for(const SweepSpec& spec) {
    const bool annulus = spec.beta > spec.alpha;
    if (spec.k || spec.k_signal)
        return annulus ? SignalDist::sparse_annulus : SignalDist::sparse_sphere;
    return annulus ? SignalDist::annulus : SignalDist::sphere;
}

EstimateReport run_cell(const SweepSpec& spec, std::size_t m, int trial) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t cell_seed = hash64(spec.seed, m, static_cast<std::uint64_t>(trial));
    const AnnulusParams ann(spec.alpha, spec.beta);
    const Threshold tau(spec.tau_rule.resolve(spec.alpha, spec.beta));
    // The true sparsity is min(k, n); the solver may be fed a looser k, so
    // the signal uses the spec's k only in sparse modes.
    const int ktrue = spec.k_signal ? *spec.k_signal : spec.k.value_or(0);
    const Vec x = sample_signal(dist_for(spec), spec.n, ktrue, ann,
                                hash64(cell_seed, 1));
    const GaussianEnsemble A = gaussian_ensemble(m, spec.n, hash64(cell_seed, 2));

    Vec estimate;
    int iters_run = 0;
    switch (spec.solver) {
        case Solver::gd1bpr: {
            LossContext ctx(A, tau, quantize(A, x, tau));
            Vec x0;
            try {
                x0 = si_1bpr(A, ctx.y, tau, spec.power_iters).signal();
            } catch (const NormEstimateUndefined&) {
                // Degenerate bits: fall back to the unscaled direction.
                x0 = power_method(spectral_matrix(A, ctx.y), spec.power_iters,
                                  hash64(cell_seed, 3));
            }
            SolverConfig cfg{default_eta(tau), spec.iters, std::nullopt, 0.0};
            auto tr = gd_1bpr(ctx, x0, cfg, &x);
            estimate = std::move(tr.final);
            iters_run = tr.iters_run;
            break;
        }
        case Solver::biht1bspr: {
            LossContext ctx(A, tau, quantize(A, x, tau));
            Vec x0;
            try {
                x0 = si_1bspr(A, ctx.y, tau, *spec.k, spec.power_iters).signal();
            } catch (const NormEstimateUndefined&) {
                Vec diag_dir(spec.n, 0.0);
                diag_dir[0] = 1.0;
                x0 = diag_dir;
            }
            SolverConfig cfg{default_eta(tau), spec.iters, spec.k, 0.0};
            auto tr = biht_1bspr(ctx, x0, cfg, &x);
            estimate = std::move(tr.final);
            iters_run = tr.iters_run;
            break;
        }
        case Solver::nbiht: {
            // Linear one-bit model; back-projection initializer.
            const auto z = apply_ensemble(A, x);
            BitVector y(m);
            for (std::size_t i = 0; i < m; ++i)
                y[i] = z[i] >= 0.0 ? std::int8_t(1) : std::int8_t(-1);
            Vec bp(spec.n, 0.0);
            const double inv_m = 1.0 / static_cast<double>(m);
            for (std::size_t i = 0; i < m; ++i)
                kernels::axpy(static_cast<double>(y[i]) * inv_m, A.row(i),
                              bp.data(), spec.n);
            const Vec x0 = hard_threshold(bp, *spec.k);
            SolverConfig cfg{default_eta(tau), spec.iters, spec.k, 0.0};
            auto tr = nbiht_baseline(A, y, x0, cfg, &x);
            estimate = std::move(tr.final);
            iters_run = tr.iters_run;
            break;
        }
        case Solver::hdm2d: {
            const BitVector y = quantize(A, x, tau);
            estimate = hdm_oracle_2d(A, y, tau, ann, spec.grid_radial,
                                     spec.grid_angular);
            iters_run = 1;
            break;
        }
    }

    EstimateReport rep;
    rep.m = m;
    rep.trial = trial;
    rep.seed = cell_seed;
    rep.dist = dist(estimate, x);
    rep.dist_n = dist_n(estimate, x);
    // Worst-case directional error when the estimate carries no direction.
    rep.dist_d = norm2(estimate) < 1e-12 ? std::sqrt(2.0) : dist_d(estimate, x);
    rep.iters_run = iters_run;
    rep.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return rep;
}

}  // namespace

std::vector<EstimateReport> run_sweep(const SweepSpec& spec) {
    spec.validate();
    std::vector<std::pair<std::size_t, int>> cells;
    for (std::size_t m : spec.m_list)
        for (int t = 0; t < spec.trials; ++t) cells.emplace_back(m, t);
    std::vector<EstimateReport> reports(cells.size());
    parallel_for(cells.size(), [&](std::size_t i) {
        reports[i] = run_cell(spec, cells[i].first, cells[i].second);
    });
    return reports;  // already in (m, trial) order
}

std::pair<double, double> fit_loglog_slope(
    const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2)
        throw DomainError("fit_loglog_slope: need >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [m, err] : points) {
        if (!(m > 0.0) || !(err > 0.0))
            throw DomainError("fit_loglog_slope: nonpositive data");
        const double lx = std::log(m), ly = std::log(err);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(points.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return {slope, (sy - slope * sx) / n};
}

namespace {
void format_double(std::ostream& os, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << buf;
}
}  // namespace

void write_csv(const std::vector<EstimateReport>& reports, std::ostream& os,
               bool include_timing) {
    os << "m,trial,seed,dist,dist_d,dist_n,iters_run,wall_ms\n";
    for (const auto& r : reports) {
        os << r.m << ',' << r.trial << ',' << r.seed << ',';
        format_double(os, r.dist);
        os << ',';
        format_double(os, r.dist_d);
        os << ',';
        format_double(os, r.dist_n);
        os << ',' << r.iters_run << ',';
        format_double(os, include_timing ? r.wall_ms : 0.0);
        os << '\n';
    }
}

void write_csv_file(const std::vector<EstimateReport>& reports,
                    const std::string& path, bool include_timing) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_csv_file: cannot open " + path);
    write_csv(reports, os, include_timing);
}

double median(std::vector<double> values) {
    if (values.empty()) throw DomainError("median: empty");
    std::sort(values.begin(), values.end());
    const std::size_t h = values.size() / 2;
    return values.size() % 2 ? values[h] : 0.5 * (values[h - 1] + values[h]);
}

double mean(const std::vector<double>& values) {
    if (values.empty()) throw DomainError("mean: empty");
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
}

namespace {
double median_column(const std::vector<EstimateReport>& reports, std::size_t m,
                     double EstimateReport::* field) {
    std::vector<double> col;
    for (const auto& r : reports)
        if (r.m == m) col.push_back(r.*field);
    return median(std::move(col));
}
}  // namespace

double median_dist_at(const std::vector<EstimateReport>& reports,
                      std::size_t m) {
    return median_column(reports, m, &EstimateReport::dist);
}

double median_dist_d_at(const std::vector<EstimateReport>& reports,
                        std::size_t m) {
    return median_column(reports, m, &EstimateReport::dist_d);
}

}  // namespace phasebit
