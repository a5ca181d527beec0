#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pctsim/simulation.hpp"

namespace pctsim {

// Goodness of a batch, low is good: gm = (1 + dnf/nruns) * log10(mean_st_ms).
// Empty when nothing solved (dnf = nruns); mean_st_ms is then ignored.
std::optional<double> goodness(double mean_st_ms, int dnf, int nruns);

struct ExperimentSummary {
    int nruns = 0;
    int dnf_count = 0;
    std::optional<double> mean_st_ms;    // over solved runs only
    std::optional<double> median_st_ms;  // over solved runs only
    std::optional<double> gm;
    std::optional<double> gm_se;         // delta-method standard error
    std::optional<double> gm_ci_lo;      // bootstrap 95% interval, filled by
    std::optional<double> gm_ci_hi;      // bootstrap_gm_ci
    double comm_mean_x = 0.0;
    double comm_stddev_x = 0.0;          // sample stddev over all runs
    double comm_mean_y = 0.0;
    double comm_stddev_y = 0.0;
    std::optional<double> pearson_r;     // per-run comm% vs ST, solved runs
};

// Aggregates a batch: ST statistics over solved runs only, communication
// statistics over all runs, correlation between per-run mean comm% of the
// two agents and ST over solved runs.
ExperimentSummary summarize(std::span<const RunResult> results);

// Standard product-moment coefficient; empty when either input is constant
// (or shorter than 2).
std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys);

// Contiguous bins of width bin_ms anchored at 0, first to last non-empty
// value; (bin start, count) pairs. Empty input gives an empty histogram.
std::vector<std::pair<long, long>> histogram(std::span<const double> st_values_ms, long bin_ms);

// Percentile bootstrap interval for the batch GM; empty when fewer than two
// distinct resamples produce a defined GM.
struct GmInterval {
    std::optional<double> lo;
    std::optional<double> hi;
};
GmInterval bootstrap_gm_ci(std::span<const RunResult> results, int resamples,
                           std::uint64_t seed);

}  // namespace pctsim
