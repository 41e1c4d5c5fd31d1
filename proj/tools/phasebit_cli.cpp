// Command-line front end: sweep/recover experiment drivers, the theory
// checks, CDP image recovery and the 2-D brute-force decoder demo.

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "phasebit/cdp.hpp"
#include "phasebit/experiments.hpp"
#include "phasebit/image_io.hpp"
#include "phasebit/metrics.hpp"
#include "phasebit/parallel.hpp"
#include "phasebit/quadrature.hpp"
#include "phasebit/rng.hpp"
#include "phasebit/solvers.hpp"
#include "phasebit/spectral.hpp"
#include "phasebit/theory.hpp"

namespace {

using namespace phasebit;

Solver parse_solver(const std::string& s) {
    if (s == "gd1bpr") return Solver::gd1bpr;
    if (s == "biht1bspr") return Solver::biht1bspr;
    if (s == "nbiht") return Solver::nbiht;
    if (s == "hdm2d") return Solver::hdm2d;
    throw CLI::ValidationError("--solver", "unknown solver " + s);
}

int cmd_sweep(const SweepSpec& spec, const std::string& out, bool timing) {
    auto reports = run_sweep(spec);
    if (out.empty()) {
        write_csv(reports, std::cout, timing);
    } else {
        write_csv_file(reports, out, timing);
    }
    std::vector<std::pair<double, double>> med_pts, mean_pts;
    for (std::size_t m : spec.m_list) {
        std::vector<double> col;
        for (const auto& r : reports)
            if (r.m == m) col.push_back(r.dist);
        med_pts.emplace_back(static_cast<double>(m), median(col));
        mean_pts.emplace_back(static_cast<double>(m), mean(col));
        std::cerr << "m=" << m << " median dist=" << med_pts.back().second
                  << " mean dist=" << mean_pts.back().second << "\n";
    }
    if (spec.m_list.size() >= 2) {
        std::cerr << "log-log slope (medians): "
                  << fit_loglog_slope(med_pts).first
                  << "  (means): " << fit_loglog_slope(mean_pts).first << "\n";
    }
    return 0;
}

int cmd_recover(std::size_t n, std::size_t m, const std::string& tau_text,
                std::uint64_t seed, const std::string& solver_name,
                int k, int k_signal, int iters, double alpha, double beta) {
    SweepSpec spec;
    spec.n = n;
    spec.m_list = {m};
    spec.trials = 1;
    spec.seed = seed;
    spec.alpha = alpha;
    spec.beta = beta;
    spec.tau_rule = TauRule::parse(tau_text);
    spec.solver = parse_solver(solver_name);
    spec.iters = iters;
    if (k > 0) spec.k = k;
    if (k_signal > 0) spec.k_signal = k_signal;
    auto reports = run_sweep(spec);
    const auto& r = reports.front();
    std::cout << "m=" << r.m << " seed=" << r.seed << " dist=" << r.dist
              << " dist_d=" << r.dist_d << " dist_n=" << r.dist_n
              << " iters=" << r.iters_run << "\n";
    return 0;
}

// Named theory checks; each prints its numbers and returns pass/fail.
bool theory_check(const std::string& name, std::uint64_t seed,
                  std::size_t samples, const std::string& out_csv) {
    if (name == "separation") {
        // Parallel pair (2,0) vs (1,0) at tau=1 against the closed form,
        // plus a CSV table of random pairs if requested.
        const Threshold tau(1.0);
        const Vec u{2.0, 0.0}, v{1.0, 0.0};
        const auto est = mc_separation(u, v, tau, samples, seed);
        const double exact = parallel_separation_exact(2.0, 1.0, tau);
        std::cout << "p_hat=" << est.p_hat << " half_width=" << est.half_width
                  << " exact=" << exact << "\n";
        if (!out_csv.empty()) {
            std::ofstream os(out_csv);
            os << "pair_id,dist,p_hat,half_width\n";
            SplitMix64 rng(seed);
            for (int p = 0; p < 50; ++p) {
                Vec a(2), b(2);
                rng.fill_gaussian(a.data(), 2);
                rng.fill_gaussian(b.data(), 2);
                const double na = norm2(a), nb = norm2(b);
                const double ra = 1.0 + rng.next_uniform(), rb = 1.0 + rng.next_uniform();
                for (auto& t : a) t *= ra / na;
                for (auto& t : b) t *= rb / nb;
                const auto e = mc_separation(a, b, Threshold(std::sqrt(2.0)),
                                             samples, hash64(seed, p));
                os << p << ',' << dist(a, b) << ',' << e.p_hat << ','
                   << e.half_width << "\n";
            }
        }
        return std::fabs(est.p_hat - exact) <= 3.0 * est.half_width;
    }
    if (name == "double-separation") {
        const Threshold tau(1.0);
        SplitMix64 rng(seed);
        bool ok = true;
        for (int p = 0; p < 10; ++p) {
            Vec u(3);
            rng.fill_gaussian(u.data(), 3);
            const double nu = norm2(u);
            for (auto& t : u) t /= nu;
            Vec v(u);
            Vec g(3);
            rng.fill_gaussian(g.data(), 3);
            for (int i = 0; i < 3; ++i) v[i] += 0.25 * rng.next_uniform() * g[i];
            const auto est = mc_double_separation(u, v, tau, samples, hash64(seed, p));
            const double bound = double_separation_bound(u, v, tau);
            std::cout << "dist=" << dist(u, v) << " p_hat=" << est.p_hat
                      << " bound=" << bound << "\n";
            ok = ok && est.p_hat <= bound + est.half_width;
        }
        return ok;
    }
    if (name == "contraction") {
        bool ok = true;
        for (const auto& [al, be, ta] :
             std::vector<std::tuple<double, double, double>>{
                 {1.0, 2.0, std::sqrt(2.0)},
                 {1.0, 1.5, std::sqrt(1.5)},
                 {0.8, 1.3, 1.0}}) {
            const AnnulusParams ann(al, be);
            const Threshold tau(ta);
            const double closed = sup_F_closed_form(ann, tau);
            const double eta = default_eta(tau);
            double brute = 0.0;
            for (int ir = 0; ir < 400; ++ir)
                for (int it = 0; it < 400; ++it) {
                    const double rho = al + (be - al) * ir / 399.0;
                    const double th = 0.5 * M_PI * it / 399.0;
                    brute = std::max(brute,
                                     contraction_profile(eta, rho * std::cos(th),
                                                         rho * std::sin(th), tau)
                                         .F);
                }
            std::cout << "alpha=" << al << " beta=" << be << " tau=" << ta
                      << " closed=" << closed << " brute=" << brute << "\n";
            ok = ok && std::fabs(closed - brute) <= 1e-4;
        }
        return ok;
    }
    if (name == "ratio-condition") {
        const bool narrow = check_ratio_condition(AnnulusParams(1.0, 1.05),
                                                  Threshold(std::sqrt(1.05)));
        const bool wide = check_ratio_condition(AnnulusParams(1.0, 10.0),
                                                Threshold(std::sqrt(10.0)));
        std::cout << "narrow(1,1.05)=" << narrow << " wide(1,10)=" << wide << "\n";
        return narrow && !wide;
    }
    if (name == "tessellation") {
        const AnnulusParams ann(1.0, std::sqrt(2.0));
        const Threshold tau(std::sqrt(2.0));
        double prev = HUGE_VAL;
        bool ok = true;
        for (std::size_t m : {250u, 500u, 1000u, 2000u, 4000u}) {
            std::vector<double> diams;
            for (int s = 0; s < 5; ++s)
                diams.push_back(
                    tessellation_audit_2d(m, tau, ann, 100, 500, hash64(seed, m, s))
                        .max_cell_diameter);
            const double med = median(diams);
            std::cout << "m=" << m << " median max cell diameter=" << med << "\n";
            ok = ok && med < prev;
            prev = med;
        }
        return ok;
    }
    if (name == "decoder") {
        const AnnulusParams ann(1.0, 2.0);
        const Threshold tau(std::sqrt(2.0));
        const auto A = gaussian_ensemble(500, 2, seed);
        // Ground truth on the grid so hamming 0 is attainable.
        const int gr = 60, ga = 240;
        const double r = 1.0 + (2.0 - 1.0) * 17 / (gr - 1.0);
        const double th = 2.0 * M_PI * 31 / ga;
        const Vec x{r * std::cos(th), r * std::sin(th)};
        const auto y = quantize(A, x, tau);
        const Vec xh = hdm_oracle_2d(A, y, tau, ann, gr, ga);
        const auto yh = quantize(A, xh, tau);
        std::cout << "dist=" << dist(xh, x) << " hamming=" << hamming(yh, y) << "\n";
        return hamming(yh, y) == 0;
    }
    throw CLI::ValidationError("--check", "unknown check " + name);
}

int cmd_cdp(const std::string& image_path, std::size_t L,
            const std::string& out_path, const std::string& report_path,
            int power_iters, int gd_iters, std::uint64_t seed) {
    const Image img = read_image(image_path);
    const std::size_t n = img.pixels();
    // Shared threshold: one third of the summed band norms for color input;
    // a grayscale image is treated as three equal bands, so tau = ||x||.
    double tau_val = 0.0;
    for (const auto& band : img.bands) {
        double s = 0.0;
        for (double v : band) s += v * v;
        tau_val += std::sqrt(s);
    }
    if (img.bands.size() > 1) tau_val /= 3.0;
    const Threshold tau(tau_val);

    Image out = img;
    std::ofstream report;
    if (!report_path.empty()) {
        report.open(report_path);
        report << "band,L,rel_error,psnr\n";
    }
    for (std::size_t b = 0; b < img.bands.size(); ++b) {
        const auto op = make_cdp_operator(n, L, hash64(seed, b));
        CVec x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = img.bands[b][i];
        const auto y = cdp_quantize(op, x, tau);
        const auto res = cdp_recover(op, y, tau, power_iters, gd_iters, &x);
        // Align the global phase before taking the real part.
        std::complex<double> c = 0.0;
        for (std::size_t i = 0; i < n; ++i) c += res.estimate[i] * std::conj(x[i]);
        const std::complex<double> rot = std::abs(c) == 0.0 ? 1.0 : std::conj(c) / std::abs(c);
        Vec rec(n);
        for (std::size_t i = 0; i < n; ++i)
            rec[i] = (rot * res.estimate[i]).real();
        const double p = psnr(rec, img.bands[b]);
        std::cout << "band " << b << ": rel_error=" << *res.rel_error
                  << " psnr=" << p << "\n";
        if (report.is_open())
            report << b << ',' << L << ',' << *res.rel_error << ',' << p << "\n";
        out.bands[b] = std::move(rec);
    }
    if (!out_path.empty()) write_image(out, out_path);
    return 0;
}

int cmd_hdm2d(std::size_t m, double tau_v, double alpha, double beta,
              std::uint64_t seed, int grid_radial, int grid_angular,
              double zeta) {
    const AnnulusParams ann(alpha, beta);
    const Threshold tau(tau_v);
    const auto A = gaussian_ensemble(m, 2, hash64(seed, 1));
    const Vec x = sample_signal(SignalDist::annulus, 2, 0, ann, hash64(seed, 2));
    auto y = quantize(A, x, tau);
    if (zeta > 0.0) y = corrupt(y, zeta, hash64(seed, 3));
    const Vec xh = hdm_oracle_2d(A, y, tau, ann, grid_radial, grid_angular);
    std::cout << "x=(" << x[0] << "," << x[1] << ") xh=(" << xh[0] << ","
              << xh[1] << ") dist=" << dist(xh, x)
              << " hamming=" << hamming(quantize(A, xh, tau), y) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"1-bit phase retrieval: solvers, oracles and experiment harness"};
    app.require_subcommand(1);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "trial-averaged error sweep over m");
    SweepSpec spec;
    std::string tau_text = "fixed:1", solver_name = "gd1bpr", out_csv;
    std::vector<std::size_t> m_list;
    int k = 0, k_signal = 0;
    bool timing = false;
    sweep->add_option("--n", spec.n, "ambient dimension");
    sweep->add_option("--k", k, "solver sparsity (biht1bspr/nbiht)");
    sweep->add_option("--k-signal", k_signal, "true signal sparsity (defaults to --k)");
    sweep->add_option("--alpha", spec.alpha, "annulus inner radius");
    sweep->add_option("--beta", spec.beta, "annulus outer radius");
    sweep->add_option("--tau", tau_text, "threshold: <v>, fixed:<v> or sqrt_ab");
    sweep->add_option("--m-list", m_list, "measurement counts (ascending)")->required();
    sweep->add_option("--trials", spec.trials, "trials per m");
    sweep->add_option("--seed", spec.seed, "master seed");
    sweep->add_option("--solver", solver_name, "gd1bpr|biht1bspr|nbiht|hdm2d");
    sweep->add_option("--iters", spec.iters, "solver iterations");
    sweep->add_option("--power-iters", spec.power_iters, "power method iterations");
    sweep->add_option("--out", out_csv, "CSV output path (default stdout)");
    sweep->add_flag("--timing", timing,
                    "emit measured wall_ms (breaks byte-determinism of the CSV)");

    // recover
    auto* recover = app.add_subcommand("recover", "single synthetic instance");
    std::size_t rec_n = 30, rec_m = 2000;
    std::string rec_tau = "fixed:1", rec_solver = "gd1bpr";
    std::uint64_t rec_seed = 0;
    int rec_k = 0, rec_k_signal = 0, rec_iters = 150;
    double rec_alpha = 1.0, rec_beta = 1.0;
    recover->add_option("--n", rec_n, "dimension");
    recover->add_option("--m", rec_m, "measurements");
    recover->add_option("--tau", rec_tau, "threshold rule");
    recover->add_option("--seed", rec_seed, "seed");
    recover->add_option("--solver", rec_solver, "solver");
    recover->add_option("--k", rec_k, "solver sparsity");
    recover->add_option("--k-signal", rec_k_signal, "true sparsity");
    recover->add_option("--iters", rec_iters, "iterations");
    recover->add_option("--alpha", rec_alpha, "annulus inner radius");
    recover->add_option("--beta", rec_beta, "annulus outer radius");

    // theory
    auto* theory = app.add_subcommand("theory", "probabilistic/geometric oracles");
    std::string check_name;
    std::uint64_t th_seed = 7;
    std::size_t th_samples = 1000000;
    std::string th_out;
    theory->add_option("--check", check_name,
                       "separation|double-separation|contraction|ratio-condition|tessellation|decoder")
        ->required();
    theory->add_option("--seed", th_seed, "seed");
    theory->add_option("--samples", th_samples, "Monte-Carlo samples");
    theory->add_option("--out", th_out, "CSV table output (separation check)");

    // cdp
    auto* cdp = app.add_subcommand("cdp", "coded-diffraction-pattern image recovery");
    std::string cdp_image, cdp_out, cdp_report;
    std::size_t cdp_L = 32;
    int cdp_power = 50, cdp_gd = 100;
    std::uint64_t cdp_seed = 1;
    cdp->add_option("--image", cdp_image, "input .pgm (P5) or .ppm (P6)")->required();
    cdp->add_option("--patterns", cdp_L, "number of masks L");
    cdp->add_option("--out", cdp_out, "recovered image path");
    cdp->add_option("--report", cdp_report, "per-band CSV report path");
    cdp->add_option("--power-iters", cdp_power, "power method iterations");
    cdp->add_option("--gd-iters", cdp_gd, "gradient iterations");
    cdp->add_option("--seed", cdp_seed, "mask seed");

    // hdm2d
    auto* hdm = app.add_subcommand("hdm2d", "brute-force decoder demo (n=2)");
    std::size_t hdm_m = 500;
    double hdm_tau = std::sqrt(2.0), hdm_alpha = 1.0, hdm_beta = 2.0, hdm_zeta = 0.0;
    std::uint64_t hdm_seed = 1;
    int hdm_gr = 200, hdm_ga = 1000;
    hdm->add_option("--m", hdm_m, "measurements");
    hdm->add_option("--tau", hdm_tau, "threshold");
    hdm->add_option("--alpha", hdm_alpha, "annulus inner radius");
    hdm->add_option("--beta", hdm_beta, "annulus outer radius");
    hdm->add_option("--seed", hdm_seed, "seed");
    hdm->add_option("--grid-radial", hdm_gr, "radial grid points");
    hdm->add_option("--grid-angular", hdm_ga, "angular grid points");
    hdm->add_option("--zeta", hdm_zeta, "adversarial flip fraction");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) {
            spec.m_list = m_list;
            spec.tau_rule = TauRule::parse(tau_text);
            spec.solver = parse_solver(solver_name);
            if (k > 0) spec.k = k;
            if (k_signal > 0) spec.k_signal = k_signal;
            return cmd_sweep(spec, out_csv, timing);
        }
        if (recover->parsed())
            return cmd_recover(rec_n, rec_m, rec_tau, rec_seed, rec_solver,
                               rec_k, rec_k_signal, rec_iters, rec_alpha, rec_beta);
        if (theory->parsed()) {
            const bool ok = theory_check(check_name, th_seed, th_samples, th_out);
            std::cout << (ok ? "PASS" : "FAIL") << " " << check_name << "\n";
            return ok ? 0 : 2;
        }
        if (cdp->parsed())
            return cmd_cdp(cdp_image, cdp_L, cdp_out, cdp_report, cdp_power,
                           cdp_gd, cdp_seed);
        if (hdm->parsed())
            return cmd_hdm2d(hdm_m, hdm_tau, hdm_alpha, hdm_beta, hdm_seed,
                             hdm_gr, hdm_ga, hdm_zeta);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
