#pragma once

#include <array>
#include <optional>
#include <vector>

#include "tinvis/rational.hpp"

namespace tinvis {

struct Point2 {
  Rat x, y;
  bool operator==(const Point2& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Point2& o) const { return !(*this == o); }
};

struct Point3 {
  Rat x, y, z;
  bool operator==(const Point3& o) const { return x == o.x && y == o.y && z == o.z; }
};

inline Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator+(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator*(const Rat& s, const Point2& a) { return {s * a.x, s * a.y}; }

inline Rat cross(const Point2& u, const Point2& v) { return u.x * v.y - u.y * v.x; }
inline Rat dot(const Point2& u, const Point2& v) { return u.x * v.x + u.y * v.y; }
inline Rat norm2(const Point2& u) { return dot(u, u); }

// Sign of the signed area of triangle abc: +1 counter-clockwise, 0 collinear.
inline int orient2d(const Point2& a, const Point2& b, const Point2& c) {
  return rat_sign(cross(b - a, c - a));
}

// Strict ordering of nonzero direction vectors by angle in [0, 2*pi),
// measured counter-clockwise from the positive x-axis.
bool angle_less(const Point2& u, const Point2& v);

// True when p lies on the closed segment [a, b].
bool on_segment(const Point2& p, const Point2& a, const Point2& b);

// Intersection of segment a0a1 (parameter t) with segment b0b1 (parameter u),
// both parameters restricted to [0, 1].
struct SegmentHit {
  bool collinear = false;
  // Point hit: t0 == t1 and u0 == u1. Collinear overlap: the shared closed
  // subsegment spans [t0, t1] along a and [u0, u1] along b, t0 <= t1.
  Rat t0, t1, u0, u1;
};
std::optional<SegmentHit> segment_intersection(const Point2& a0, const Point2& a1,
                                               const Point2& b0, const Point2& b1);

// Counter-clockwise convex hull with strictly convex corners. Collinear
// inputs degenerate to the two extreme points, a single point stays single.
std::vector<Point2> convex_hull(std::vector<Point2> points);

// Membership in the closed region bounded by a hull as produced above.
bool hull_contains(const std::vector<Point2>& hull, const Point2& p);

// Squared distance from p to the infinite line through a and b (a != b).
Rat line_point_dist2(const Point2& a, const Point2& b, const Point2& p);

// Twice the signed area of a closed polygon walk (positive when counter-clockwise).
Rat polygon_area2(const std::vector<Point2>& walk);

// Sign of det[b-a, c-a, d-a]. Positive when d lies on the upper side of the
// plane through a, b, c whose projection winds counter-clockwise.
int orient3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d);

// Face walks of a connected plane straight-line graph given by an edge
// list. Bounded faces come back counter-clockwise; the unique unbounded
// face walk is returned separately, clockwise, with cut edges traversed
// once per side.
struct PlanarFaces {
  std::vector<std::vector<int>> bounded;
  std::vector<int> outer;
};
PlanarFaces planar_faces(const std::vector<Point2>& coords,
                         const std::vector<std::pair<int, int>>& edges);

}  // namespace tinvis
