#include "pctsim/simulation.hpp"

#include <cmath>

namespace pctsim {

namespace {

StatusFlags flags_from_message(const StatusMessage& m) {
    StatusFlags f;
    f.stuck = m.stuck;
    f.access = m.access;
    f.arrived = m.arrived;
    return f;
}

}  // namespace

Simulation::Simulation(const RunConfig& cfg)
    : cfg_(cfg),
      rng_x_(mix_seed(cfg.seed, static_cast<std::uint64_t>(StreamTag::AgentX))),
      rng_y_(mix_seed(cfg.seed, static_cast<std::uint64_t>(StreamTag::AgentY))) {
    if (cfg_.tick_ms <= 0) throw ConfigError("tick_ms must be positive");
    if (cfg_.cap_ms <= 0 || cfg_.cap_ms % cfg_.tick_ms != 0)
        throw ConfigError("cap_ms must be a positive multiple of tick_ms");
    validate_params(cfg_.params_x);
    validate_params(cfg_.params_y);
    validate_world(cfg_.world);
    segments_ = barrier_segments(cfg_.world);
    state_.vehicle = cfg_.world.vehicle_start;
    refresh_flags();
    seen_y_access_ = state_.flags_y.access;
    seen_x_access_ = state_.flags_x.access;
}

void Simulation::refresh_flags() {
    // stuck / collided_edge are owned by apply_axis_move; everything else is
    // a pure function of the current position.
    state_.flags_x.access = compute_access(state_, cfg_.world, segments_, Axis::X);
    state_.flags_y.access = compute_access(state_, cfg_.world, segments_, Axis::Y);
    state_.flags_x.arrived = compute_arrived(state_, cfg_.world, Axis::X);
    state_.flags_y.arrived = compute_arrived(state_, cfg_.world, Axis::Y);
    state_.flags_x.target_known = cfg_.params_x.target_view;
    state_.flags_y.target_known = cfg_.params_y.target_view;
    // An arrived axis issues no movement and cannot be blocked.
    if (state_.flags_x.arrived) state_.flags_x.stuck = false;
    if (state_.flags_y.arrived) state_.flags_y.stuck = false;
}

bool Simulation::at_target() const { return success(state_, cfg_.world); }

void Simulation::step() {
    const StatusFlags fx = state_.flags_x;
    const StatusFlags fy = state_.flags_y;
    auto [msg_x, msg_y] = exchange(state_.tick, fx, fy);

    Directive dir_x = arbitrate(fx, flags_from_message(msg_y), cfg_.coop_x, agent_x_);
    Directive dir_y = arbitrate(fy, flags_from_message(msg_x), cfg_.coop_y, agent_y_);

    CommFiring fired;
    fired.x = communication_fired(fx, msg_y, cfg_.coop_x, dir_x,
                                  solo_baseline(fx, cfg_.coop_x), seen_y_access_);
    fired.y = communication_fired(fy, msg_x, cfg_.coop_y, dir_y,
                                  solo_baseline(fy, cfg_.coop_y), seen_x_access_);
    ledger_.record(state_.tick, fired);
    seen_y_access_ = msg_y.access;
    seen_x_access_ = msg_x.access;

    double cmd_x = agent_command(agent_x_, dir_x, state_.vehicle.x, cfg_.world.target.x,
                                 cfg_.world.target_tolerance, cfg_.params_x, rng_x_);
    double cmd_y = agent_command(agent_y_, dir_y, state_.vehicle.y, cfg_.world.target.y,
                                 cfg_.world.target_tolerance, cfg_.params_y, rng_y_);

    MoveResult mx = apply_axis_move(state_, Axis::X, cmd_x, segments_, cfg_.world);
    MoveResult my = apply_axis_move(state_, Axis::Y, cmd_y, segments_, cfg_.world);

    agent_tick_timer(agent_x_, cfg_.tick_ms);
    agent_tick_timer(agent_y_, cfg_.tick_ms);

    if (cfg_.record_trace) {
        TraceRow row;
        row.tick = state_.tick;
        row.position = state_.vehicle;
        row.dir_x = dir_x;
        row.dir_y = dir_y;
        row.cmd_x = cmd_x;
        row.cmd_y = cmd_y;
        row.achieved_x = mx.achieved;
        row.achieved_y = my.achieved;
        row.flags_x = fx;
        row.flags_y = fy;
        row.comm_x = fired.x;
        row.comm_y = fired.y;
        trace_.push_back(row);
    }

    state_.tick += 1;
    refresh_flags();
}

RunResult run(const RunConfig& cfg) {
    Simulation sim(cfg);
    const long cap_ticks = cfg.cap_ms / cfg.tick_ms;
    RunResult out;
    out.seed = cfg.seed;
    while (sim.tick() < cap_ticks) {
        if (sim.at_target()) {
            out.solved = true;
            out.st_ms = sim.tick() * cfg.tick_ms;
            break;
        }
        sim.step();
    }
    out.ticks = sim.tick();
    out.comm_pct_x = sim.ledger().pct_x();
    out.comm_pct_y = sim.ledger().pct_y();
    if (cfg.record_trace) out.trace = sim.trace();
    return out;
}

}  // namespace pctsim
