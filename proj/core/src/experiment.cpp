#include "pctsim/experiment.hpp"

#include <algorithm>
#include <exception>
#include <string>
#include <thread>

namespace pctsim {

namespace {

RunConfig make_run_config(const ExperimentConfig& cfg, const CoopLevel& coop_x,
                          const CoopLevel& coop_y, int run_index) {
    std::uint64_t run_seed = mix_seed(cfg.master_seed, static_cast<std::uint64_t>(run_index));
    Rng world_rng(mix_seed(run_seed, static_cast<std::uint64_t>(StreamTag::World)));

    WorldConfig world;
    if (cfg.barrier_mode == BarrierMode::RandomPerRun) {
        world = random_world(world_rng, cfg.nbarriers, cfg.base_world.target_tolerance,
                             cfg.base_world.vehicle_radius);
    } else {
        world = cfg.base_world;
        if (cfg.randomize_start_target) randomize_positions(world, world_rng);
    }

    RunConfig rc;
    rc.world = world;
    rc.coop_x = coop_x;
    rc.coop_y = coop_y;
    rc.params_x = cfg.params_x;
    rc.params_y = cfg.params_y;
    rc.seed = run_seed;
    rc.tick_ms = cfg.tick_ms;
    rc.cap_ms = cfg.cap_ms;
    return rc;
}

}  // namespace

std::vector<RunResult> run_batch(const ExperimentConfig& cfg, const CoopLevel& coop_x,
                                 const CoopLevel& coop_y) {
    if (cfg.nruns < 1) throw ConfigError("nruns must be >= 1");
    if (cfg.threads < 1) throw ConfigError("threads must be >= 1");

    std::vector<RunResult> results(static_cast<size_t>(cfg.nruns));
    int nthreads = std::min(cfg.threads, cfg.nruns);
    // One exception slot per run keeps error reporting deterministic: after
    // the join, the lowest failing run index wins.
    std::vector<std::exception_ptr> errors(static_cast<size_t>(cfg.nruns));

    auto work = [&](int first) {
        for (int i = first; i < cfg.nruns; i += nthreads) {
            try {
                results[static_cast<size_t>(i)] = run(make_run_config(cfg, coop_x, coop_y, i));
            } catch (const ConfigError& e) {
                errors[static_cast<size_t>(i)] = std::make_exception_ptr(
                    ConfigError("run " + std::to_string(i) + ": " + e.what()));
            } catch (...) {
                errors[static_cast<size_t>(i)] = std::current_exception();
            }
        }
    };

    if (nthreads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(work, t);
        for (std::thread& t : pool) t.join();
    }
    for (const std::exception_ptr& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return results;
}

ExperimentSummary summarize_batch(const ExperimentConfig& cfg, const CoopLevel& coop_x,
                                  const CoopLevel& coop_y, std::span<const RunResult> results) {
    ExperimentSummary s = summarize(results);
    std::uint64_t ci_seed =
        mix_seed(cfg.master_seed, static_cast<std::uint64_t>(coop_x.index() * 16 + coop_y.index()));
    GmInterval ci = bootstrap_gm_ci(results, cfg.bootstrap_resamples, ci_seed);
    s.gm_ci_lo = ci.lo;
    s.gm_ci_hi = ci.hi;
    return s;
}

std::vector<SweepRow> sweep_matched(const ExperimentConfig& cfg) {
    std::vector<SweepRow> rows;
    rows.reserve(16);
    for (int i = 0; i < 16; ++i) {
        CoopLevel level = CoopLevel::from_index(i);
        std::vector<RunResult> results = run_batch(cfg, level, level);
        rows.push_back({level, level, summarize_batch(cfg, level, level, results)});
    }
    return rows;
}

std::vector<SweepRow> sweep_full(const ExperimentConfig& cfg) {
    std::vector<SweepRow> rows;
    rows.reserve(256);
    for (int xi = 0; xi < 16; ++xi) {
        CoopLevel cx = CoopLevel::from_index(xi);
        for (int yi = 0; yi < 16; ++yi) {
            CoopLevel cy = CoopLevel::from_index(yi);
            std::vector<RunResult> results = run_batch(cfg, cx, cy);
            rows.push_back({cx, cy, summarize_batch(cfg, cx, cy, results)});
        }
    }
    return rows;
}

std::vector<BarrierSweepRow> sweep_barriers(const ExperimentConfig& cfg, const CoopPair& pair_a,
                                            const CoopPair& pair_b) {
    std::vector<BarrierSweepRow> rows;
    rows.reserve(8);
    for (const CoopPair& pair : {pair_a, pair_b}) {
        for (int nb = 0; nb <= 3; ++nb) {
            ExperimentConfig c = cfg;
            c.barrier_mode = BarrierMode::RandomPerRun;
            c.nbarriers = nb;
            std::vector<RunResult> results = run_batch(c, pair.x, pair.y);
            rows.push_back({pair, nb, summarize_batch(c, pair.x, pair.y, results)});
        }
    }
    return rows;
}

}  // namespace pctsim
