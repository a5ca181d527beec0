#include "pctsim/environment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <utility>

namespace pctsim {

namespace {

constexpr int kMaxRejections = 10000;
constexpr int kGridN = 400;

bool finite_unit(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

}  // namespace

Segment Barrier::as_segment() const {
    Vec2 half{0.5 * length * std::cos(rotation), 0.5 * length * std::sin(rotation)};
    return Segment(center - half, center + half);
}

std::vector<Segment> barrier_segments(const WorldConfig& w) {
    std::vector<Segment> out;
    out.reserve(w.barriers.size());
    for (const Barrier& b : w.barriers) out.push_back(b.as_segment());
    return out;
}

void validate_world(const WorldConfig& w) {
    if (!(w.vehicle_radius > 0.0) || w.vehicle_radius >= 0.5)
        throw ConfigError("vehicle_radius must be in (0, 0.5)");
    if (!(w.target_tolerance > 0.0) || !std::isfinite(w.target_tolerance))
        throw ConfigError("target_tolerance must be positive");
    if (!finite_unit(w.target.x) || !finite_unit(w.target.y))
        throw ConfigError("target must lie in the unit square");
    if (!finite_unit(w.vehicle_start.x) || !finite_unit(w.vehicle_start.y))
        throw ConfigError("vehicle_start must lie in the unit square");
    if (w.barriers.size() > 3) throw ConfigError("at most 3 barriers are supported");
    double lo = w.vehicle_radius;
    double hi = 1.0 - w.vehicle_radius;
    if (w.vehicle_start.x < lo || w.vehicle_start.x > hi ||
        w.vehicle_start.y < lo || w.vehicle_start.y > hi)
        throw ConfigError("vehicle_start leaves no clearance to the square's edge");
    for (const Barrier& b : w.barriers) {
        if (!finite_unit(b.center.x) || !finite_unit(b.center.y))
            throw ConfigError("barrier center must lie in the unit square");
        if (!(b.rotation >= 0.0) || !(b.rotation < std::numbers::pi))
            throw ConfigError("barrier rotation must be in [0, pi)");
        if (!(b.length > 0.0) || b.length > 1.0)
            throw ConfigError("barrier length must be in (0, 1]");
        Segment seg = b.as_segment();
        if (point_segment_distance(w.vehicle_start, seg) <= w.vehicle_radius)
            throw ConfigError("vehicle_start collides with a barrier");
        if (point_segment_distance(w.target, seg) < w.target_tolerance)
            throw ConfigError("target lies within target_tolerance of a barrier");
    }
}

namespace {

Vec2 draw_target(Rng& rng, const std::vector<Segment>& segs, double tolerance) {
    for (int i = 0; i < kMaxRejections; ++i) {
        Vec2 p{rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95)};
        bool clear = true;
        for (const Segment& s : segs) {
            if (point_segment_distance(p, s) < tolerance) {
                clear = false;
                break;
            }
        }
        if (clear) return p;
    }
    throw ConfigError("could not place a target clear of the barriers");
}

Vec2 draw_start(Rng& rng, const std::vector<Segment>& segs, double radius) {
    for (int i = 0; i < kMaxRejections; ++i) {
        Vec2 p{rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95)};
        bool clear = true;
        for (const Segment& s : segs) {
            if (point_segment_distance(p, s) <= radius) {
                clear = false;
                break;
            }
        }
        if (clear) return p;
    }
    throw ConfigError("could not place a collision-free vehicle start");
}

}  // namespace

WorldConfig random_world(Rng& rng, int nbarriers, double target_tolerance, double vehicle_radius) {
    if (nbarriers < 0 || nbarriers > 3) throw ConfigError("barrier count must be 0..3");
    WorldConfig w;
    w.target_tolerance = target_tolerance;
    w.vehicle_radius = vehicle_radius;
    for (int i = 0; i < nbarriers; ++i) {
        Barrier b;
        b.center = {rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9)};
        b.rotation = rng.uniform(0.0, std::numbers::pi);
        b.length = rng.uniform(0.1, 0.5);
        w.barriers.push_back(b);
    }
    randomize_positions(w, rng);
    return w;
}

void randomize_positions(WorldConfig& w, Rng& rng) {
    std::vector<Segment> segs = barrier_segments(w);
    w.target = draw_target(rng, segs, w.target_tolerance);
    w.vehicle_start = draw_start(rng, segs, w.vehicle_radius);
}

StatusFlags& axis_flags(WorldState& w, Axis a) { return a == Axis::X ? w.flags_x : w.flags_y; }
const StatusFlags& axis_flags(const WorldState& w, Axis a) {
    return a == Axis::X ? w.flags_x : w.flags_y;
}

namespace {

// True when the radius-swept sweep from `from` to `to` clears every barrier,
// ignoring barriers the vehicle is already negotiating (within three radii):
// those are at the agent rather than between it and the target, and contact
// is what the stuck flag reports.
bool sweep_clear(Vec2 vehicle, Vec2 from, Vec2 to, double radius,
                 std::span<const Segment> barriers) {
    const double negotiating = 3.0 * radius;
    for (const Segment& s : barriers) {
        if (point_segment_distance(vehicle, s) <= negotiating) continue;
        if (capsule_segment_intersects(from, to, radius, s)) return false;
    }
    return true;
}

}  // namespace

bool compute_access(const WorldState& w, const WorldConfig& cfg,
                    std::span<const Segment> barriers, Axis axis) {
    const double r = cfg.vehicle_radius;
    const Axis other = axis == Axis::X ? Axis::Y : Axis::X;
    const double band_lo = std::min(component(w.vehicle, other), component(cfg.target, other));
    const double band_hi = std::max(component(w.vehicle, other), component(cfg.target, other));
    // A corridor is the sweep of this axis to the target coordinate with the
    // other coordinate held at some height the vehicle could still occupy
    // (the other axis only ever moves between its current value and the
    // target's). The blocked heights of one barrier form a single interval,
    // so if any corridor is open, one is open at a band end or just past a
    // barrier end; testing those candidates decides the whole band.
    auto corridor_clear = [&](double c) {
        if (c < band_lo || c > band_hi) return false;
        Vec2 from = w.vehicle;
        component(from, other) = c;
        Vec2 to = from;
        component(to, axis) = component(cfg.target, axis);
        return sweep_clear(w.vehicle, from, to, r, barriers);
    };
    // The lane at the current height grants access by itself.
    if (corridor_clear(component(w.vehicle, other))) return true;
    // Any other corridor counts only while the target is in direct sight (a
    // line, not a travel corridor).
    if (!sweep_clear(w.vehicle, w.vehicle, cfg.target, 1e-9, barriers)) return false;
    if (corridor_clear(component(cfg.target, other))) return true;
    for (const Segment& s : barriers) {
        for (Vec2 end : {s.a, s.b}) {
            double c = component(end, other);
            if (corridor_clear(c + r + 1e-6) || corridor_clear(c - r - 1e-6)) return true;
        }
    }
    return false;
}

bool compute_arrived(const WorldState& w, const WorldConfig& cfg, Axis axis) {
    return std::abs(component(w.vehicle, axis) - component(cfg.target, axis)) <=
           cfg.target_tolerance;
}

MoveResult apply_axis_move(WorldState& w, Axis axis, double delta,
                           std::span<const Segment> barriers, const WorldConfig& cfg) {
    // A zero command is not a movement attempt: the axis keeps the verdict of
    // its last attempt, so a latched stuck stays visible while the agent holds
    // position (e.g. when the access gate withholds the approach).
    if (delta == 0.0) return MoveResult{};
    MoveResult mr = swept_axis_move(w.vehicle, axis, delta, barriers, cfg.vehicle_radius);
    component(w.vehicle, axis) += mr.achieved;
    double cmd = std::abs(delta);
    StatusFlags& f = axis_flags(w, axis);
    f.stuck = mr.blocked_by == Obstruction::Barrier && std::abs(mr.achieved) < 0.1 * cmd;
    f.collided_edge = mr.blocked_by == Obstruction::Edge && std::abs(mr.achieved) < 0.1 * cmd;
    return mr;
}

bool success(const WorldState& w, const WorldConfig& cfg) {
    return compute_arrived(w, cfg, Axis::X) && compute_arrived(w, cfg, Axis::Y);
}

bool solvable(const WorldConfig& w) {
    std::vector<Segment> segs = barrier_segments(w);
    const double r = w.vehicle_radius;
    const double cell = 1.0 / kGridN;

    auto center_of = [cell](int ix, int iy) {
        return Vec2{(ix + 0.5) * cell, (iy + 0.5) * cell};
    };
    auto blocked = [&](int ix, int iy) {
        Vec2 c = center_of(ix, iy);
        if (c.x < r || c.x > 1.0 - r || c.y < r || c.y > 1.0 - r) return true;
        for (const Segment& s : segs) {
            if (point_segment_distance(c, s) <= r) return true;
        }
        return false;
    };
    auto cell_index = [](double v) {
        int i = static_cast<int>(v * kGridN);
        return std::clamp(i, 0, kGridN - 1);
    };

    int sx = cell_index(w.vehicle_start.x);
    int sy = cell_index(w.vehicle_start.y);
    if (blocked(sx, sy)) return false;

    auto is_goal = [&](int ix, int iy) {
        Vec2 c = center_of(ix, iy);
        return std::abs(c.x - w.target.x) <= w.target_tolerance &&
               std::abs(c.y - w.target.y) <= w.target_tolerance;
    };

    std::vector<char> seen(static_cast<size_t>(kGridN) * kGridN, 0);
    auto idx = [](int ix, int iy) { return static_cast<size_t>(iy) * kGridN + ix; };
    std::queue<std::pair<int, int>> frontier;
    frontier.push({sx, sy});
    seen[idx(sx, sy)] = 1;
    while (!frontier.empty()) {
        auto [ix, iy] = frontier.front();
        frontier.pop();
        if (is_goal(ix, iy)) return true;
        constexpr int dx[4] = {1, -1, 0, 0};
        constexpr int dy[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
            int nx = ix + dx[k];
            int ny = iy + dy[k];
            if (nx < 0 || nx >= kGridN || ny < 0 || ny >= kGridN) continue;
            if (seen[idx(nx, ny)] || blocked(nx, ny)) continue;
            seen[idx(nx, ny)] = 1;
            frontier.push({nx, ny});
        }
    }
    return false;
}

}  // namespace pctsim
