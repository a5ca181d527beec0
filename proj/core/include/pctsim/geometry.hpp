#pragma once

#include <cmath>
#include <span>

#include "pctsim/errors.hpp"

namespace pctsim {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::sqrt(dot(v, v)); }

enum class Axis { X, Y };

inline double component(const Vec2& v, Axis a) { return a == Axis::X ? v.x : v.y; }
inline double& component(Vec2& v, Axis a) { return a == Axis::X ? v.x : v.y; }

// Non-degenerate line segment: construction rejects a == b.
struct Segment {
    Segment(Vec2 a_, Vec2 b_);
    Vec2 a;
    Vec2 b;
    friend bool operator==(const Segment&, const Segment&) = default;
};

enum class Obstruction { None, Barrier, Edge };

// Outcome of an axis-aligned swept move. achieved carries the sign of the
// command; blocked_by is None exactly when achieved equals the command.
struct MoveResult {
    double achieved = 0.0;
    Obstruction blocked_by = Obstruction::None;
};

double point_segment_distance(Vec2 p, const Segment& seg);
double segment_segment_distance(const Segment& s, const Segment& t);

// Closed tests: touching at exactly `radius` counts as intersecting.
bool segment_circle_intersects(const Segment& seg, Vec2 center, double radius);
// True iff seg comes within radius of the straight path a -> b. The path may
// be degenerate (a == b), in which case this is a circle test.
bool capsule_segment_intersects(Vec2 a, Vec2 b, double radius, const Segment& seg);

// Moves a disc of the given radius from pos along one axis by the signed
// delta through the unit square, stopping just short of the first barrier
// contact or exactly at the inset square bound [radius, 1-radius]. The start
// must already be inside the bounds and clear of every barrier (up to a
// 1e-9 slack); otherwise throws ConfigError. No intermediate or final
// position ever penetrates a barrier, regardless of delta magnitude.
MoveResult swept_axis_move(Vec2 pos, Axis axis, double delta,
                           std::span<const Segment> barriers, double radius);

}  // namespace pctsim
