#ifndef SUMBOUNDS_EXPERIMENTS_HPP
#define SUMBOUNDS_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sumbounds/bounds.hpp"
#include "sumbounds/rng.hpp"

namespace sumbounds {

// One sweep specification: which precision and distribution, the n grid,
// the failure probability, and the stream identity.
struct ExperimentConfig {
    Precision format = Precision::single;
    Distribution distribution = Distribution::normal;
    std::size_t n_start = 0;
    std::size_t n_end = 0;
    std::size_t n_step = 0;
    double failure_prob = 1e-16;
    std::uint64_t seed = 123;
    std::size_t trials_per_point = 1;
    DetVariant det_variant = DetVariant::theorem;
    bool exact_accumulators = false;

    void validate() const;          // throws config_error
    std::size_t point_count() const;
};

struct SweepRow {
    BoundReport report;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::int64_t time_c_path_ns = 0;
    std::int64_t time_m_path_ns = 0;
};

// One grid point: streams the data twice with identical values, once for the
// deterministic/Azuma weights and the true error (timed as the c path), once
// for the martingale weights (timed as the m path). Memory stays O(1) in n.
SweepRow run_point(const ExperimentConfig& cfg, std::size_t n, std::size_t trial = 0);

// Applies run_point over the grid; rows ordered by (n, trial). Grid points
// are independent, so the parallel path distributes them across threads and
// produces the identical rows.
std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg, bool parallel = true);

struct FailureRateReport {
    std::string bound_id;  // "azuma" or "martingale"
    double failure_prob = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t violations = 0;
    std::uint64_t zero_sum_trials = 0;
    Rational empirical_rate;
    double cp99_upper = 0.0;  // 99% Clopper-Pearson upper confidence bound
    std::size_t n = 0;
    ExperimentConfig config;
};

// Monte-Carlo estimate of how often the chosen probabilistic bound fails to
// cover the realized relative error.
FailureRateReport estimate_failure_rate(const ExperimentConfig& cfg,
                                        std::string_view bound_id, std::size_t n,
                                        std::uint64_t trials, bool parallel = true);

// One-sided upper confidence bound for a binomial proportion.
double clopper_pearson_upper(std::uint64_t successes, std::uint64_t trials,
                             double confidence);

}  // namespace sumbounds

#endif
