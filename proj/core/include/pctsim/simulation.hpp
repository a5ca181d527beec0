#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pctsim/agent.hpp"
#include "pctsim/comms.hpp"
#include "pctsim/environment.hpp"

namespace pctsim {

struct RunConfig {
    WorldConfig world;
    CoopLevel coop_x;
    CoopLevel coop_y;
    AgentParams params_x;
    AgentParams params_y;
    std::uint64_t seed = 0;
    int tick_ms = 10;
    int cap_ms = 30000;
    bool record_trace = false;
};

struct TraceRow {
    long tick = 0;
    Vec2 position;          // after this tick's moves
    Directive dir_x = Directive::Stop;
    Directive dir_y = Directive::Stop;
    double cmd_x = 0.0;
    double cmd_y = 0.0;
    double achieved_x = 0.0;
    double achieved_y = 0.0;
    StatusFlags flags_x;    // snapshot the directives were based on
    StatusFlags flags_y;
    bool comm_x = false;
    bool comm_y = false;
};

struct RunResult {
    bool solved = false;
    std::optional<long> st_ms;     // present iff solved
    double comm_pct_x = 0.0;
    double comm_pct_y = 0.0;
    long ticks = 0;                // equals cap_ms/tick_ms iff not solved
    std::uint64_t seed = 0;
    std::vector<TraceRow> trace;   // filled iff record_trace
};

// One run's live state, stepped a tick at a time. Each step snapshots both
// agents' flags, exchanges them, arbitrates and executes both directives
// (X moves first, Y sees the post-X position), updates the communication
// ledger and refreshes the flags for the next tick.
class Simulation {
public:
    explicit Simulation(const RunConfig& cfg);  // throws ConfigError

    void step();
    bool at_target() const;
    long tick() const { return state_.tick; }
    const WorldState& world_state() const { return state_; }
    const AgentState& agent_state(Axis a) const { return a == Axis::X ? agent_x_ : agent_y_; }
    const CommLedger& ledger() const { return ledger_; }
    const std::vector<TraceRow>& trace() const { return trace_; }

private:
    void refresh_flags();

    RunConfig cfg_;
    std::vector<Segment> segments_;
    WorldState state_;
    AgentState agent_x_;
    AgentState agent_y_;
    Rng rng_x_;
    Rng rng_y_;
    CommLedger ledger_;
    std::vector<TraceRow> trace_;
    // Partner access as last observed, for the gate's change detection.
    bool seen_y_access_ = true;
    bool seen_x_access_ = true;
};

// Drives a Simulation until success or the time cap. A run whose start
// already satisfies the success predicate reports st_ms = 0; reaching the
// cap without success is a DNF and leaves st_ms unset.
RunResult run(const RunConfig& cfg);

}  // namespace pctsim
