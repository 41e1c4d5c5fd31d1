#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "phasebit/experiments.hpp"
#include "phasebit/metrics.hpp"

using namespace phasebit;
using doctest::Approx;

TEST_CASE("sample_signal examples") {
    const AnnulusParams ann(1.0, 3.0);
    const Vec s = sample_signal(SignalDist::sphere, 20, 0, ann, 1);
    CHECK(norm2(s) == Approx(1.0).epsilon(1e-12));

    const Vec a = sample_signal(SignalDist::annulus, 20, 0, ann, 2);
    CHECK(norm2(a) >= 1.0 - 1e-12);
    CHECK(norm2(a) <= 3.0 + 1e-12);

    const Vec sp = sample_signal(SignalDist::sparse_sphere, 500, 3, ann, 3);
    int nnz = 0;
    for (double v : sp) nnz += (v != 0.0);
    CHECK(nnz == 3);
    CHECK(norm2(sp) == Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(sample_signal(SignalDist::sparse_sphere, 4, 9, ann, 4),
                    DomainError);
}

TEST_CASE("fit_loglog_slope examples") {
    std::vector<std::pair<double, double>> pts;
    for (double m : {100.0, 300.0, 900.0, 2700.0}) pts.emplace_back(m, 7.3 / m);
    auto [slope, icept] = fit_loglog_slope(pts);
    CHECK(slope == Approx(-1.0).epsilon(1e-12));
    CHECK(icept == Approx(std::log(7.3)).epsilon(1e-12));

    pts.clear();
    for (double m : {100.0, 400.0, 1600.0}) pts.emplace_back(m, 2.0 / std::sqrt(m));
    CHECK(fit_loglog_slope(pts).first == Approx(-0.5).epsilon(1e-12));

    pts.push_back({10.0, -1.0});
    CHECK_THROWS_AS(fit_loglog_slope(pts), DomainError);
    CHECK_THROWS_AS(fit_loglog_slope({{10.0, 1.0}}), DomainError);
}

TEST_CASE("tau rule parsing") {
    CHECK(TauRule::parse("sqrt_ab").resolve(1.0, 4.0) == Approx(2.0));
    CHECK(TauRule::parse("fixed:1.5").resolve(1.0, 4.0) == Approx(1.5));
    CHECK(TauRule::parse("2.5").resolve(1.0, 4.0) == Approx(2.5));
    CHECK_THROWS_AS(TauRule::parse("bogus"), DomainError);
}

TEST_CASE("single-cell sweep emits exactly one row") {
    SweepSpec spec;
    spec.n = 8;
    spec.m_list = {200};
    spec.trials = 1;
    spec.seed = 5;
    spec.solver = Solver::gd1bpr;
    spec.iters = 30;
    const auto reports = run_sweep(spec);
    CHECK(reports.size() == 1);
    CHECK(reports[0].m == 200);
    CHECK(reports[0].trial == 0);
    CHECK(reports[0].iters_run == 30);
}

TEST_CASE("sweep output is byte-identical across reruns") {
    SweepSpec spec;
    spec.n = 8;
    spec.m_list = {100, 200};
    spec.trials = 4;
    spec.seed = 17;
    spec.solver = Solver::gd1bpr;
    spec.iters = 25;
    std::ostringstream a, b;
    write_csv(run_sweep(spec), a);
    write_csv(run_sweep(spec), b);
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("m,trial,seed,dist,dist_d,dist_n,iters_run,wall_ms\n", 0) == 0);
}

TEST_CASE("per-row metric consistency") {
    SweepSpec spec;
    spec.n = 10;
    spec.alpha = 1.0;
    spec.beta = 2.0;
    spec.tau_rule = TauRule::parse("sqrt_ab");
    spec.m_list = {150, 300};
    spec.trials = 5;
    spec.seed = 23;
    spec.solver = Solver::gd1bpr;
    spec.iters = 40;
    for (const auto& r : run_sweep(spec)) {
        CHECK(r.dist <= spec.beta * r.dist_d + r.dist_n + 1e-9);
        CHECK(r.wall_ms >= 0.0);
    }
}

TEST_CASE("report multiset is independent of worker count") {
    SweepSpec spec;
    spec.n = 8;
    spec.m_list = {100};
    spec.trials = 6;
    spec.seed = 31;
    spec.solver = Solver::gd1bpr;
    spec.iters = 20;
    const auto base = run_sweep(spec);
    setenv("PHASEBIT_THREADS", "1", 1);
    const auto serial = run_sweep(spec);
    unsetenv("PHASEBIT_THREADS");
    REQUIRE(base.size() == serial.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(base[i].m == serial[i].m);
        CHECK(base[i].trial == serial[i].trial);
        CHECK(base[i].seed == serial[i].seed);
        CHECK(base[i].dist == serial[i].dist);   // identical, not just close
        CHECK(base[i].dist_d == serial[i].dist_d);
        CHECK(base[i].dist_n == serial[i].dist_n);
    }
}

TEST_CASE("sweep validation rejects malformed specs") {
    SweepSpec spec;
    spec.m_list = {};
    CHECK_THROWS_AS(run_sweep(spec), DomainError);
    spec.m_list = {300, 200};
    CHECK_THROWS_AS(run_sweep(spec), DomainError);
    spec.m_list = {200};
    spec.solver = Solver::biht1bspr;  // missing k
    CHECK_THROWS_AS(run_sweep(spec), DomainError);
    spec.solver = Solver::hdm2d;
    spec.n = 3;
    CHECK_THROWS_AS(run_sweep(spec), DomainError);
}

TEST_CASE("hdm2d sweep lane produces tiny errors at desk scale") {
    SweepSpec spec;
    spec.n = 2;
    spec.alpha = 1.0;
    spec.beta = 2.0;
    spec.tau_rule = TauRule::parse("sqrt_ab");
    spec.m_list = {400};
    spec.trials = 3;
    spec.seed = 41;
    spec.solver = Solver::hdm2d;
    spec.grid_radial = 100;
    spec.grid_angular = 400;
    for (const auto& r : run_sweep(spec)) CHECK(r.dist < 0.2);
}
