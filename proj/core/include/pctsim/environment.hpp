#pragma once

#include <span>
#include <vector>

#include "pctsim/agent.hpp"
#include "pctsim/geometry.hpp"
#include "pctsim/rng.hpp"

namespace pctsim {

// Zero-width straight barrier, stored as center, rotation in [0, pi) and
// total length in (0, 1]. Rotation 0 is parallel to the x axis.
struct Barrier {
    Vec2 center;
    double rotation = 0.0;
    double length = 0.0;
    Segment as_segment() const;
    friend bool operator==(const Barrier&, const Barrier&) = default;
};

struct WorldConfig {
    Vec2 target;
    Vec2 vehicle_start;
    std::vector<Barrier> barriers;           // at most 3
    double target_tolerance = 0.02;          // per axis
    double vehicle_radius = 0.01;
    friend bool operator==(const WorldConfig&, const WorldConfig&) = default;
};

// Throws ConfigError on out-of-range fields, a colliding start position, or
// a target closer than target_tolerance to a barrier.
void validate_world(const WorldConfig& w);

std::vector<Segment> barrier_segments(const WorldConfig& w);

// Samples a world with the given number of barriers: barrier centers uniform
// in [0.1, 0.9]^2, rotations uniform in [0, pi), lengths uniform in
// [0.1, 0.5]; then a target at least target_tolerance clear of every barrier
// and a collision-free vehicle start, both uniform in [0.05, 0.95]^2.
// Rejection sampling; throws ConfigError after 10000 failed draws for any
// single quantity.
WorldConfig random_world(Rng& rng, int nbarriers,
                         double target_tolerance = 0.02, double vehicle_radius = 0.01);

// Redraws only target and vehicle start (same rules as random_world),
// keeping the barrier set.
void randomize_positions(WorldConfig& w, Rng& rng);

// Reachability probe on a 400x400 occupancy grid: a cell is blocked when its
// center is within vehicle_radius of a barrier or of the square's edge, and
// the probe asks for a 4-connected path from the vehicle's cell to any cell
// whose center lies within target_tolerance of the target on both axes.
bool solvable(const WorldConfig& w);

struct WorldState {
    Vec2 vehicle;
    StatusFlags flags_x;
    StatusFlags flags_y;
    long tick = 0;
};

StatusFlags& axis_flags(WorldState& w, Axis a);
const StatusFlags& axis_flags(const WorldState& w, Axis a);

// An axis agent has access when no barrier separates it from its target
// coordinate along a corridor it could still travel: the radius-swept sweep
// of its own axis to the target coordinate, with the other coordinate held
// somewhere between its current value and the target's (the other axis only
// ever moves inside that band). The lane at the current height grants access
// by itself; any other corridor in the band counts only while the target is
// in direct sight, since the agent cannot otherwise tell an open detour from
// a walled pocket. Barriers the vehicle is already negotiating (within three
// radii) do not count as separating: contact is the stuck flag's business,
// so access can stay true while the vehicle presses a face, and can be false
// long before it touches anything.
bool compute_access(const WorldState& w, const WorldConfig& cfg,
                    std::span<const Segment> barriers, Axis axis);

// True iff the vehicle's coordinate on this axis is within target_tolerance
// of the target's (boundary inclusive).
bool compute_arrived(const WorldState& w, const WorldConfig& cfg, Axis axis);

// Applies a swept move on one axis and refreshes that axis's stuck /
// collided_edge flags: a flag is set iff the move was cut short by that
// obstruction kind and less than 10% of the commanded distance was achieved.
// A zero delta is not an attempt and leaves both flags untouched.
MoveResult apply_axis_move(WorldState& w, Axis axis, double delta,
                           std::span<const Segment> barriers, const WorldConfig& cfg);

// True iff arrived holds on both axes.
bool success(const WorldState& w, const WorldConfig& cfg);

}  // namespace pctsim
