#pragma once

#include <span>
#include <string>

#include "pctsim/experiment.hpp"
#include "pctsim/simulation.hpp"

namespace pctsim {

// header: run,solved,st_ms,comm_pct_x,comm_pct_y,seed
// st_ms is empty on DNF rows; decimals use 6 significant digits.
std::string emit_run_csv(std::span<const RunResult> results);

// header: coop_x,coop_y,gm,dnf,mean_st_ms,comm_pct_total
// Exactly 256 cells required, one per ordered pair; rows are emitted with
// coop_x as the slow index, both axes in four-bit index order 0000, 1000,
// 0100, 1100, 0010, ... An undefined GM is an empty field, never NaN.
// comm_pct_total is the mean of the two agents' comm%.
std::string emit_heatmap(std::span<const SweepRow> cells);

// header: coop_x,coop_y,gm,gm_se,gm_ci_lo,gm_ci_hi,dnf,nruns,mean_st_ms,
//         median_st_ms,comm_x_mean,comm_x_stddev,comm_y_mean,comm_y_stddev,
//         pearson_r
std::string emit_sweep_csv(std::span<const SweepRow> rows);

// header: pair,nbarriers,gm,dnf,nruns,mean_st_ms,comm_pct_total
std::string emit_barriers_csv(std::span<const BarrierSweepRow> rows);

// Per-tick telemetry for a single run.
std::string emit_trace_csv(std::span<const TraceRow> rows);

}  // namespace pctsim
