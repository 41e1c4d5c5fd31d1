#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "phasebit/types.hpp"

namespace phasebit {

enum class Solver { gd1bpr, biht1bspr, nbiht, hdm2d };

enum class SignalDist { sphere, annulus, sparse_sphere, sparse_annulus };

/// Threshold rule for a sweep: a fixed value or tau = sqrt(alpha beta).
struct TauRule {
    enum class Kind { fixed, sqrt_ab } kind = Kind::fixed;
    double value = 1.0;

    static TauRule parse(const std::string& text);
    double resolve(double alpha, double beta) const;
    std::string str() const;
};

struct SweepSpec {
    std::size_t n = 30;
    std::optional<int> k;         // solver sparsity
    std::optional<int> k_signal;  // true sparsity of the sampled x; defaults to k
    TauRule tau_rule;
    double alpha = 1.0;
    double beta = 1.0;
    std::vector<std::size_t> m_list;
    int trials = 50;
    std::uint64_t seed = 0;
    Solver solver = Solver::gd1bpr;
    int iters = 150;
    int power_iters = 50;
    int grid_radial = 200;    // hdm2d lane only
    int grid_angular = 1000;  // hdm2d lane only

    void validate() const;
};

struct EstimateReport {
    std::size_t m = 0;
    int trial = 0;
    std::uint64_t seed = 0;
    double dist = 0.0;
    double dist_d = 0.0;
    double dist_n = 0.0;
    int iters_run = 0;
    double wall_ms = 0.0;
};

/// x per the figure distributions: uniform direction on the sphere (dense or
/// k-sparse with support uniform over the n-choose-k possibilities), scaled
/// by lambda ~ U[alpha, beta] in the annulus modes.
Vec sample_signal(SignalDist dist, std::size_t n, int k,
                  const AnnulusParams& ann, std::uint64_t seed);

/// One report per (m, trial), rows in deterministic (m, trial) order; trials
/// fan out over worker threads, each trial fully seeded by
/// hash64(seed, m, trial).
std::vector<EstimateReport> run_sweep(const SweepSpec& spec);

/// Least squares on (ln m, ln err). All inputs must be positive.
std::pair<double, double> fit_loglog_slope(
    const std::vector<std::pair<double, double>>& points);

/// Fixed schema: m,trial,seed,dist,dist_d,dist_n,iters_run,wall_ms.
/// wall_ms is written as 0 unless include_timing is set, keeping default
/// output byte-identical across reruns.
void write_csv(const std::vector<EstimateReport>& reports, std::ostream& os,
               bool include_timing = false);
void write_csv_file(const std::vector<EstimateReport>& reports,
                    const std::string& path, bool include_timing = false);

double median(std::vector<double> values);
double mean(const std::vector<double>& values);

/// Median of the dist column at a given m.
double median_dist_at(const std::vector<EstimateReport>& reports,
                      std::size_t m);
double median_dist_d_at(const std::vector<EstimateReport>& reports,
                        std::size_t m);

}  // namespace phasebit
