#include "tinvis/geometry.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace tinvis {

namespace {

// 0 for angles in [0, pi), 1 for [pi, 2*pi).
int half_plane(const Point2& u) {
  if (u.y > 0) return 0;
  if (u.y < 0) return 1;
  if (u.x > 0) return 0;
  if (u.x < 0) return 1;
  throw std::invalid_argument("angle_less: zero direction");
}

}  // namespace

bool angle_less(const Point2& u, const Point2& v) {
  int hu = half_plane(u), hv = half_plane(v);
  if (hu != hv) return hu < hv;
  return rat_sign(cross(u, v)) > 0;
}

bool on_segment(const Point2& p, const Point2& a, const Point2& b) {
  if (orient2d(a, b, p) != 0) return false;
  return dot(p - a, b - a) >= 0 && dot(p - b, a - b) >= 0;
}

std::optional<SegmentHit> segment_intersection(const Point2& a0, const Point2& a1,
                                               const Point2& b0, const Point2& b1) {
  Point2 r = a1 - a0, s = b1 - b0;
  Rat denom = cross(r, s);
  Point2 w = b0 - a0;
  if (denom != 0) {
    Rat t = cross(w, s) / denom;
    Rat u = cross(w, r) / denom;
    if (t < 0 || t > 1 || u < 0 || u > 1) return std::nullopt;
    SegmentHit hit;
    hit.collinear = false;
    hit.t0 = hit.t1 = t;
    hit.u0 = hit.u1 = u;
    return hit;
  }
  if (cross(w, r) != 0) return std::nullopt;  // parallel, distinct carriers
  Rat rr = norm2(r);
  if (rr == 0) {
    // a is a single point; report it as a point hit if it lies on b.
    if (!on_segment(a0, b0, b1)) return std::nullopt;
    Rat ss = norm2(s);
    SegmentHit hit;
    hit.collinear = false;
    hit.t0 = hit.t1 = 0;
    hit.u0 = hit.u1 = ss == 0 ? Rat(0) : dot(a0 - b0, s) / ss;
    return hit;
  }
  Rat tb0 = dot(b0 - a0, r) / rr;
  Rat tb1 = dot(b1 - a0, r) / rr;
  Rat lo = std::min(tb0, tb1), hi = std::max(tb0, tb1);
  Rat t0 = std::max(Rat(0), lo), t1 = std::min(Rat(1), hi);
  if (t0 > t1) return std::nullopt;
  if (t0 == t1) {
    SegmentHit hit;
    hit.collinear = false;
    hit.t0 = hit.t1 = t0;
    Rat ss = norm2(s);
    Point2 p = a0 + t0 * r;
    hit.u0 = hit.u1 = ss == 0 ? Rat(0) : dot(p - b0, s) / ss;
    return hit;
  }
  SegmentHit hit;
  hit.collinear = true;
  hit.t0 = t0;
  hit.t1 = t1;
  Rat ss = norm2(s);
  Point2 p0 = a0 + t0 * r, p1 = a0 + t1 * r;
  hit.u0 = dot(p0 - b0, s) / ss;
  hit.u1 = dot(p1 - b0, s) / ss;
  return hit;
}

std::vector<Point2> convex_hull(std::vector<Point2> points) {
  std::sort(points.begin(), points.end(), [](const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() <= 2) return points;
  std::vector<Point2> hull;
  auto build = [&](auto first, auto last) {
    std::size_t base = hull.size();
    for (auto it = first; it != last; ++it) {
      while (hull.size() >= base + 2 &&
             orient2d(hull[hull.size() - 2], hull.back(), *it) <= 0)
        hull.pop_back();
      hull.push_back(*it);
    }
    hull.pop_back();  // drop the chain's closing point, the next chain reuses it
  };
  build(points.begin(), points.end());
  build(points.rbegin(), points.rend());
  if (hull.size() < 3) {  // all input points collinear
    return {points.front(), points.back()};
  }
  return hull;
}

bool hull_contains(const std::vector<Point2>& hull, const Point2& p) {
  if (hull.empty()) return false;
  if (hull.size() == 1) return p == hull[0];
  if (hull.size() == 2) return on_segment(p, hull[0], hull[1]);
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point2& a = hull[i];
    const Point2& b = hull[(i + 1) % hull.size()];
    if (orient2d(a, b, p) < 0) return false;
  }
  return true;
}

Rat line_point_dist2(const Point2& a, const Point2& b, const Point2& p) {
  Point2 d = b - a;
  Rat dd = norm2(d);
  if (dd == 0) throw std::invalid_argument("line_point_dist2: degenerate line");
  Rat c = cross(d, p - a);
  return c * c / dd;
}

Rat polygon_area2(const std::vector<Point2>& walk) {
  Rat area = 0;
  for (std::size_t i = 0; i < walk.size(); ++i) {
    const Point2& a = walk[i];
    const Point2& b = walk[(i + 1) % walk.size()];
    area += cross(a, b);
  }
  return area;
}

PlanarFaces planar_faces(const std::vector<Point2>& coords,
                         const std::vector<std::pair<int, int>>& edges) {
  struct Half {
    int from, to;
    int next = -1;
  };
  std::vector<Half> halves;
  std::map<std::pair<int, int>, int> index;
  for (const auto& [a, b] : edges) {
    halves.push_back({a, b, -1});
    index[{a, b}] = static_cast<int>(halves.size()) - 1;
    halves.push_back({b, a, -1});
    index[{b, a}] = static_cast<int>(halves.size()) - 1;
  }
  std::map<int, std::vector<int>> outgoing;
  for (int h = 0; h < static_cast<int>(halves.size()); ++h)
    outgoing[halves[h].from].push_back(h);
  for (auto& [v, list] : outgoing) {
    std::sort(list.begin(), list.end(), [&](int a, int b) {
      Point2 da = coords[halves[a].to] - coords[halves[a].from];
      Point2 db = coords[halves[b].to] - coords[halves[b].from];
      return angle_less(da, db);
    });
  }
  // next(u->v) continues the face with interior on the left: step to the
  // clockwise neighbor of the reversed edge around v.
  for (int h = 0; h < static_cast<int>(halves.size()); ++h) {
    int twin = index.at({halves[h].to, halves[h].from});
    const auto& ring = outgoing.at(halves[h].to);
    auto it = std::find(ring.begin(), ring.end(), twin);
    std::size_t pos = static_cast<std::size_t>(it - ring.begin());
    halves[h].next = ring[(pos + ring.size() - 1) % ring.size()];
  }
  PlanarFaces out;
  std::vector<char> seen(halves.size(), 0);
  for (int h0 = 0; h0 < static_cast<int>(halves.size()); ++h0) {
    if (seen[h0]) continue;
    std::vector<int> walk;
    int h = h0;
    do {
      seen[h] = 1;
      walk.push_back(halves[h].from);
      h = halves[h].next;
    } while (h != h0);
    std::vector<Point2> pts;
    pts.reserve(walk.size());
    for (int v : walk) pts.push_back(coords[v]);
    if (polygon_area2(pts) > 0) {
      out.bounded.push_back(std::move(walk));
    } else {
      if (!out.outer.empty())
        throw std::invalid_argument("planar_faces: graph is not connected");
      out.outer = std::move(walk);
    }
  }
  return out;
}

int orient3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
  Rat bx = b.x - a.x, by = b.y - a.y, bz = b.z - a.z;
  Rat cx = c.x - a.x, cy = c.y - a.y, cz = c.z - a.z;
  Rat dx = d.x - a.x, dy = d.y - a.y, dz = d.z - a.z;
  Rat det = bx * (cy * dz - cz * dy) - by * (cx * dz - cz * dx) + bz * (cx * dy - cy * dx);
  return rat_sign(det);
}

}  // namespace tinvis
