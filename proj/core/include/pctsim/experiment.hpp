#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pctsim/metrics.hpp"
#include "pctsim/simulation.hpp"

namespace pctsim {

enum class BarrierMode { Fixed, RandomPerRun };

struct ExperimentConfig {
    int nruns = 200;
    int nbarriers = 3;                 // barrier count for RandomPerRun
    BarrierMode barrier_mode = BarrierMode::RandomPerRun;
    // Fixed mode reuses base_world's barriers; tolerances and radius apply
    // in both modes. Start/target are redrawn per run when
    // randomize_start_target is set.
    WorldConfig base_world;
    bool randomize_start_target = true;
    std::uint64_t master_seed = 1;
    AgentParams params_x;
    AgentParams params_y;
    int tick_ms = 10;
    int cap_ms = 30000;
    int threads = 1;
    int bootstrap_resamples = 200;
};

// Runs nruns simulations for one cooperation pair. Run i's seed derives from
// (master_seed, i) only, so different pairs see identical worlds and agent
// noise. Results are positionally ordered and independent of threads.
std::vector<RunResult> run_batch(const ExperimentConfig& cfg, const CoopLevel& coop_x,
                                 const CoopLevel& coop_y);

// summarize() plus the seeded bootstrap interval.
ExperimentSummary summarize_batch(const ExperimentConfig& cfg, const CoopLevel& coop_x,
                                  const CoopLevel& coop_y, std::span<const RunResult> results);

struct SweepRow {
    CoopLevel coop_x;
    CoopLevel coop_y;
    ExperimentSummary summary;
};

// 16 rows, both agents at the same level, in four-bit index order
// 0000, 1000, 0100, 1100, 0010, ...
std::vector<SweepRow> sweep_matched(const ExperimentConfig& cfg);

// All 256 ordered pairs; coop_x is the slow index, both in four-bit index
// order.
std::vector<SweepRow> sweep_full(const ExperimentConfig& cfg);

struct CoopPair {
    CoopLevel x;
    CoopLevel y;
};

struct BarrierSweepRow {
    CoopPair pair;
    int nbarriers = 0;
    ExperimentSummary summary;
};

// Random worlds at 0..3 barriers for two cooperation pairs; rows grouped by
// pair, barrier count ascending.
std::vector<BarrierSweepRow> sweep_barriers(const ExperimentConfig& cfg, const CoopPair& pair_a,
                                            const CoopPair& pair_b);

}  // namespace pctsim
