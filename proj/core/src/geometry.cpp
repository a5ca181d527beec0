#include "pctsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace pctsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Gap left between the disc and a barrier when a move is cut short. Large
// enough that the stop position is strictly collision-free, small enough to
// be invisible at simulation scale.
constexpr double kContactBackstep = 1e-7;
// Start positions may under-run the exact clearance by this much before
// they are rejected as penetrating.
constexpr double kPenetrationSlack = 1e-9;
// Blocked intervals that end this close to the start are floating-point
// residue from a start resting exactly at contact, not real obstructions.
constexpr double kForwardEps = 1e-12;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool empty = true;
};

// Solutions of lo_bound <= f0 + t * fu <= hi_bound.
Interval slab(double f0, double fu, double lo_bound, double hi_bound) {
    if (fu == 0.0) {
        if (f0 < lo_bound || f0 > hi_bound) return {};
        return {-kInf, kInf, false};
    }
    double t1 = (lo_bound - f0) / fu;
    double t2 = (hi_bound - f0) / fu;
    if (t1 > t2) std::swap(t1, t2);
    return {t1, t2, false};
}

Interval intersect(Interval a, Interval b) {
    if (a.empty || b.empty) return {};
    double lo = std::max(a.lo, b.lo);
    double hi = std::min(a.hi, b.hi);
    if (lo > hi) return {};
    return {lo, hi, false};
}

// Solutions of |p0 + t*u - c| <= r for a unit direction u.
Interval disc_hits(Vec2 p0, Vec2 u, Vec2 c, double r) {
    Vec2 w = c - p0;
    double wu = dot(w, u);
    double q = wu * wu - dot(w, w) + r * r;
    if (q < 0.0) return {};
    double s = std::sqrt(q);
    return {wu - s, wu + s, false};
}

// Parameter interval along the ray p0 + t*u (u unit) where the disc of the
// given radius overlaps seg. The overlap region is a capsule, so the result
// is a single interval: the union of the two endpoint-disc intervals and the
// body-rectangle interval, each of which shares its boundary with the
// capsule's.
Interval capsule_hits(Vec2 p0, Vec2 u, const Segment& seg, double r) {
    Interval out;
    auto merge = [&out](Interval piece) {
        if (piece.empty) return;
        if (out.empty) {
            out = piece;
        } else {
            out.lo = std::min(out.lo, piece.lo);
            out.hi = std::max(out.hi, piece.hi);
        }
    };
    merge(disc_hits(p0, u, seg.a, r));
    merge(disc_hits(p0, u, seg.b, r));

    Vec2 ab = seg.b - seg.a;
    double len = norm(ab);
    Vec2 e = (1.0 / len) * ab;
    Vec2 n{-e.y, e.x};
    Vec2 rel = p0 - seg.a;
    Interval body = intersect(slab(dot(rel, n), dot(u, n), -r, r),
                              slab(dot(rel, e), dot(u, e), 0.0, len));
    merge(body);
    return out;
}

// Earliest travel distance in (0, limit] at which the disc touches seg, or
// nullopt if the stretch is clear.
std::optional<double> swept_entry(Vec2 p0, Vec2 u, double limit, const Segment& seg, double r) {
    Interval hit = capsule_hits(p0, u, seg, r);
    if (hit.empty || hit.hi <= kForwardEps || hit.lo > limit) return std::nullopt;
    return std::max(hit.lo, 0.0);
}

}  // namespace

Segment::Segment(Vec2 a_, Vec2 b_) : a(a_), b(b_) {
    if (a == b) throw ConfigError("segment endpoints coincide");
}

double point_segment_distance(Vec2 p, const Segment& seg) {
    Vec2 ab = seg.b - seg.a;
    double t = dot(p - seg.a, ab) / dot(ab, ab);
    t = std::clamp(t, 0.0, 1.0);
    return norm(p - (seg.a + t * ab));
}

namespace {

bool segments_properly_intersect(const Segment& s, const Segment& t) {
    double d1 = cross(t.b - t.a, s.a - t.a);
    double d2 = cross(t.b - t.a, s.b - t.a);
    double d3 = cross(s.b - s.a, t.a - s.a);
    double d4 = cross(s.b - s.a, t.b - s.a);
    return ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) &&
           ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0));
}

}  // namespace

double segment_segment_distance(const Segment& s, const Segment& t) {
    // Touching or collinear-overlap cases yield 0 through the endpoint
    // distances, so only proper crossings need the orientation test.
    if (segments_properly_intersect(s, t)) return 0.0;
    return std::min(std::min(point_segment_distance(s.a, t), point_segment_distance(s.b, t)),
                    std::min(point_segment_distance(t.a, s), point_segment_distance(t.b, s)));
}

bool segment_circle_intersects(const Segment& seg, Vec2 center, double radius) {
    return point_segment_distance(center, seg) <= radius;
}

bool capsule_segment_intersects(Vec2 a, Vec2 b, double radius, const Segment& seg) {
    if (a == b) return point_segment_distance(a, seg) <= radius;
    return segment_segment_distance(Segment(a, b), seg) <= radius;
}

MoveResult swept_axis_move(Vec2 pos, Axis axis, double delta,
                           std::span<const Segment> barriers, double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw ConfigError("vehicle radius must be positive");
    if (!std::isfinite(delta)) throw ConfigError("move delta must be finite");
    double lo = radius - kPenetrationSlack;
    double hi = 1.0 - radius + kPenetrationSlack;
    if (pos.x < lo || pos.x > hi || pos.y < lo || pos.y > hi)
        throw ConfigError("start position outside the traversable square");
    for (const Segment& seg : barriers) {
        if (point_segment_distance(pos, seg) < radius - kPenetrationSlack)
            throw ConfigError("start position penetrates a barrier");
    }

    if (delta == 0.0) return {0.0, Obstruction::None};

    double dir = delta > 0.0 ? 1.0 : -1.0;
    double want = std::abs(delta);
    double bound_travel = dir > 0.0 ? (1.0 - radius) - component(pos, axis)
                                    : component(pos, axis) - radius;
    bound_travel = std::max(bound_travel, 0.0);

    double feasible = std::min(want, bound_travel);
    Obstruction blocker = want <= bound_travel ? Obstruction::None : Obstruction::Edge;

    Vec2 u{0.0, 0.0};
    component(u, axis) = dir;
    for (const Segment& seg : barriers) {
        if (auto entry = swept_entry(pos, u, feasible, seg, radius)) {
            feasible = std::max(0.0, *entry - kContactBackstep);
            blocker = Obstruction::Barrier;
        }
    }
    return {dir * feasible, blocker};
}

}  // namespace pctsim
