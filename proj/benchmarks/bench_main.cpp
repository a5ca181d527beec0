#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "pctsim/environment.hpp"
#include "pctsim/experiment.hpp"
#include "pctsim/geometry.hpp"
#include "pctsim/rng.hpp"
#include "pctsim/simulation.hpp"

namespace {

pctsim::WorldConfig bench_world(std::uint64_t seed, int nbarriers) {
    pctsim::Rng rng(pctsim::mix_seed(seed, static_cast<std::uint64_t>(pctsim::StreamTag::World)));
    return pctsim::random_world(rng, nbarriers);
}

void BM_SweptAxisMove(benchmark::State& state) {
    pctsim::WorldConfig w = bench_world(1, static_cast<int>(state.range(0)));
    std::vector<pctsim::Segment> segs = pctsim::barrier_segments(w);
    pctsim::Vec2 pos = w.vehicle_start;
    double delta = 0.005;
    for (auto _ : state) {
        pctsim::MoveResult mr =
            pctsim::swept_axis_move(pos, pctsim::Axis::X, delta, segs, w.vehicle_radius);
        benchmark::DoNotOptimize(mr);
        delta = -delta;  // oscillate in place, keeping the start valid
    }
}
BENCHMARK(BM_SweptAxisMove)->Arg(0)->Arg(1)->Arg(3);

void BM_SimulationTick(benchmark::State& state) {
    pctsim::RunConfig cfg;
    cfg.world = bench_world(2, 3);
    cfg.coop_x = pctsim::CoopLevel::from_string("1111");
    cfg.coop_y = pctsim::CoopLevel::from_string("1111");
    cfg.seed = 2;
    pctsim::Simulation sim(cfg);
    long cap = cfg.cap_ms / cfg.tick_ms;
    for (auto _ : state) {
        if (sim.tick() >= cap) {
            state.PauseTiming();
            sim = pctsim::Simulation(cfg);
            state.ResumeTiming();
        }
        sim.step();
    }
}
BENCHMARK(BM_SimulationTick);

void BM_FullRun(benchmark::State& state) {
    pctsim::RunConfig cfg;
    cfg.world = bench_world(3, static_cast<int>(state.range(0)));
    cfg.coop_x = pctsim::CoopLevel::from_string("0110");
    cfg.coop_y = pctsim::CoopLevel::from_string("0110");
    std::uint64_t seed = 0;
    for (auto _ : state) {
        cfg.seed = seed++;
        pctsim::RunResult r = pctsim::run(cfg);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_FullRun)->Arg(0)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Batch(benchmark::State& state) {
    pctsim::ExperimentConfig cfg;
    cfg.nruns = static_cast<int>(state.range(0));
    cfg.nbarriers = 3;
    cfg.master_seed = 4;
    pctsim::CoopLevel level = pctsim::CoopLevel::from_string("0110");
    for (auto _ : state) {
        auto results = pctsim::run_batch(cfg, level, level);
        benchmark::DoNotOptimize(results);
    }
}
BENCHMARK(BM_Batch)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
