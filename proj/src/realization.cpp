#include "tinvis/realization.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "tinvis/drawing.hpp"
#include "tinvis/geometry.hpp"
#include "tinvis/triangulation.hpp"

namespace tinvis {

namespace {

// Squared distance from p to the line y = s*x + c, times (1 + s^2). Kept
// unnormalized so callers can compare against bounds scaled the same way.
Rat line_gap2_scaled(const Line& l, const Point2& p) {
  Rat d = l.slope * p.x - p.y + l.intercept;
  return d * d;
}

// Foot of the origin's perpendicular on the line.
Point2 origin_foot(const Line& l) {
  Rat denom = 1 + l.slope * l.slope;
  return Point2{-l.slope * l.intercept / denom, l.intercept / denom};
}

// Point on the line at signed parameter t along direction (1, slope) from
// the origin's foot.
Point2 line_at(const Line& l, const Point2& foot, const Rat& t) {
  return Point2{foot.x + t, foot.y + t * l.slope};
}

// Dyadic t > 0 with |line_at(t)|^2 inside [lo, hi]. The squared radius is
// foot_norm2 + t^2 (1 + s^2), strictly increasing in t, so plain bisection
// on a power-of-two bracket stays exact and terminates.
Rat bisect_radius(const Rat& foot_norm2, const Rat& one_plus_s2, const Rat& lo,
                  const Rat& hi) {
  if (foot_norm2 >= lo) throw std::runtime_error("anchor window is inside the drawing disk");
  Rat t_hi = 1;
  while (foot_norm2 + t_hi * t_hi * one_plus_s2 < hi) t_hi *= 2;
  Rat t_lo = 0;
  for (int step = 0; step < 512; ++step) {
    Rat mid = (t_lo + t_hi) / 2;
    Rat v = foot_norm2 + mid * mid * one_plus_s2;
    if (v < lo) {
      t_lo = mid;
    } else if (v > hi) {
      t_hi = mid;
    } else {
      return mid;
    }
  }
  throw std::runtime_error("anchor bisection failed to land in its window");
}

// Strictly inside the angle at `apex` spanned by the two arms. Each arm
// ray gets the point on the same strict side as the other arm.
bool inside_wedge(const Point2& apex, const Point2& arm1, const Point2& arm2,
                  const Point2& p) {
  int ref1 = orient2d(apex, arm1, arm2);
  int ref2 = orient2d(apex, arm2, arm1);
  if (ref1 == 0 || ref2 == 0) return false;
  return orient2d(apex, arm1, p) == ref1 && orient2d(apex, arm2, p) == ref2;
}

// Squared distance from the origin to segment [a, b].
Rat segment_closest2(const Point2& a, const Point2& b) {
  Point2 d = b - a;
  Rat len2 = norm2(d);
  if (len2 == 0) return norm2(a);
  Rat t = -dot(a, d) / len2;
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  return norm2(Point2{a.x + t * d.x, a.y + t * d.y});
}

}  // namespace

Realization build_realization(const ReductionInstance& ri,
                              const std::vector<Line>& lines,
                              const RealizationParams& params) {
  const int n = ri.n;
  if (static_cast<int>(lines.size()) != n)
    throw std::invalid_argument("build_realization: line count does not match the instance");
  if (!ri.base.has_coords)
    throw std::invalid_argument("build_realization: instance carries no coordinates");

  Realization out;

  // Center on the crossing centroid.
  const int base_count = ri.base.vertex_count();
  const int crossings_begin = 2 * n;
  const int crossings_end = 2 * n + n * (n - 1) / 2;
  Point2 sum{0, 0};
  for (int v = crossings_begin; v < crossings_end; ++v) sum = sum + ri.base.coords[v];
  Rat inv_c(1, crossings_end - crossings_begin);
  out.center = Point2{sum.x * inv_c, sum.y * inv_c};

  std::vector<Point2> raw(base_count);
  for (int v = 0; v < base_count; ++v) raw[v] = ri.base.coords[v] - out.center;
  std::vector<Line> centered;
  centered.reserve(n);
  for (const Line& l : lines)
    centered.push_back(Line{l.slope, l.slope * out.center.x + l.intercept - out.center.y});

  // Push both tips of every line out to a common squared radius far beyond
  // the rest of the drawing, re-seating the outermost splits on the grown
  // segments. Equal-radius stubs keep every wall anchor ahead of every
  // possible viewer along its own ray.
  std::set<int> moved;
  for (int i = 0; i < n; ++i) {
    const auto& path = ri.base.paths[i];
    moved.insert(path[1]);
    moved.insert(path[path.size() - 2]);
  }
  Rat rx2 = 0;
  for (int v = 0; v < base_count; ++v) {
    if (ri.base.roles[v] == VertexRole::endpoint || moved.count(v)) continue;
    rx2 = std::max(rx2, norm2(raw[v]));
  }
  if (rx2 == 0) throw std::invalid_argument("build_realization: degenerate drawing");

  std::vector<int> tip_ids;
  for (int last = 0; last < 2; ++last)
    for (int k = 0; k < n; ++k) tip_ids.push_back(endpoint_vertex(ri.walk_order[k], last));

  Rat reach = 4 * dyadic_above_sqrt(rx2) + 4;
  Rat tip2_hi = 0;
  bool extended = false;
  for (int attempt = 0; attempt < 30 && !extended; ++attempt) {
    if (attempt > 0) reach *= 4;
    Rat lo = reach * reach;
    Rat hi = lo + lo / (1 << 20);
    tip2_hi = hi;
    for (int i = 0; i < n; ++i) {
      const Line& l = centered[i];
      Rat one_plus_s2 = 1 + l.slope * l.slope;
      Point2 foot = origin_foot(l);
      Rat t = bisect_radius(norm2(foot), one_plus_s2, lo, hi);
      raw[endpoint_vertex(i + 1, 0)] = line_at(l, foot, -t);
      raw[endpoint_vertex(i + 1, 1)] = line_at(l, foot, t);
      const auto& path = ri.base.paths[i];
      const std::size_t m = path.size();
      for (int end = 0; end < 2; ++end) {
        Point2 a = raw[path[end == 0 ? 0 : m - 3]];
        Point2 b = raw[path[end == 0 ? 2 : m - 1]];
        Point2 d = b - a;
        Rat scale = std::max(rat_abs(d.x), rat_abs(d.y));
        Point2 left{-d.y / scale, d.x / scale};
        Point2 mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
        raw[path[end == 0 ? 1 : m - 2]] = mid + ri.base.eta * left;
      }
    }

    // Tips must come out in outer-walk cyclic order and pairwise separated,
    // otherwise grow the reach and retry.
    std::vector<int> order(tip_ids.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return angle_less(raw[tip_ids[a]], raw[tip_ids[b]]);
    });
    std::vector<int> pos(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = static_cast<int>(k);
    bool ok = true;
    const int tn = static_cast<int>(tip_ids.size());
    for (int k = 0; k < tn && ok; ++k)
      if ((pos[k] + 1) % tn != pos[(k + 1) % tn]) ok = false;
    for (int a = 0; a < tn && ok; ++a)
      for (int b = a + 1; b < tn && ok; ++b)
        if (dot(raw[tip_ids[a]], raw[tip_ids[b]]) > lo - lo / (1 << 16)) ok = false;
    extended = ok;
  }
  if (!extended)
    throw std::runtime_error("build_realization: stub directions are too close to separate");

  // Scale by a power of two until the drawing clears the chord ring: inside
  // 1/512, a quarter of every chord's closest approach, and a thirty-second
  // of the shortest chord.
  Rat max_norm2 = 0;
  for (int v = 0; v < base_count; ++v) max_norm2 = std::max(max_norm2, norm2(raw[v]));
  const Rat window(17, 5);
  Rat rho_cap2 = Rat(1, 1 << 18);
  const int tn = static_cast<int>(tip_ids.size());
  for (int k = 0; k < tn; ++k) {
    const Point2& a = raw[tip_ids[k]];
    const Point2& b = raw[tip_ids[(k + 1) % tn]];
    rho_cap2 = std::min(rho_cap2, Rat(window * segment_closest2(a, b) / (16 * tip2_hi)));
    Rat cr = cross(a, b);
    rho_cap2 = std::min(rho_cap2, Rat(window * cr * cr / (4096 * norm2(a) * norm2(b))));
  }
  out.sigma = 1;
  while (out.sigma * out.sigma * max_norm2 > rho_cap2) out.sigma /= 2;
  for (int k = 0; k < params.shrink; ++k) out.sigma /= 2;

  std::vector<Point2> base_pts(base_count);
  for (int v = 0; v < base_count; ++v) base_pts[v] = out.sigma * raw[v];
  out.lines.reserve(n);
  for (const Line& l : centered) out.lines.push_back(Line{l.slope, out.sigma * l.intercept});

  // Smallest clearance between a base vertex and a line it does not lie
  // near; the guard offsets stay a factor eight below it.
  std::vector<std::set<int>> on_line(n);
  for (int i = 0; i < n; ++i)
    on_line[i] = std::set<int>(ri.base.paths[i].begin(), ri.base.paths[i].end());
  Rat min_gap2;
  bool any_gap = false;
  for (int v = 0; v < base_count; ++v) {
    for (int i = 0; i < n; ++i) {
      if (on_line[i].count(v)) continue;
      Rat g2 = line_gap2_scaled(out.lines[i], base_pts[v]) /
               (1 + out.lines[i].slope * out.lines[i].slope);
      if (g2 == 0)
        throw std::invalid_argument("build_realization: a vertex lies exactly on a foreign line");
      if (!any_gap || g2 < min_gap2) min_gap2 = g2, any_gap = true;
    }
  }
  if (!any_gap) throw std::invalid_argument("build_realization: no clearances to measure");

  Rat epsilon = dyadic_near_sqrt(min_gap2 / 64, 1);
  epsilon = std::min(epsilon, Rat(1, 20000));
  if (params.epsilon > 0) epsilon = std::min(epsilon, params.epsilon);
  out.epsilon = epsilon;

  const int total = ri.vertex_count();
  std::vector<Point2> pts(total);
  std::vector<Rat> height(total, 0);
  for (int v = 0; v < base_count; ++v) pts[v] = base_pts[v];

  // Guards: both sides of every line, every one landed by its own bisection
  // in one shared squared-radius window of width epsilon^2/4, offset by tau
  // along the unnormalized normals so the true offset lands just under
  // epsilon. Matching radii keep the ring chords level.
  Rat wband = epsilon * epsilon / 4;
  Rat win_lo = window + wband / 4;
  Rat win_hi = window + 3 * wband / 4;
  for (int i = 0; i < n; ++i) {
    const Line& l = out.lines[i];
    Rat one_plus_s2 = 1 + l.slope * l.slope;
    Point2 foot = origin_foot(l);
    Rat tau = dyadic_near_sqrt(epsilon * epsilon / one_plus_s2, 1);
    Point2 up{-l.slope * tau, tau};
    Point2 down{l.slope * tau, -tau};
    const LineGadget& g = ri.gadgets[i];
    for (int side = 0; side < 2; ++side) {
      int sv = side == 0 ? g.s : g.s_prime;
      int rv = side == 0 ? g.r : g.r_prime;
      for (int v : {sv, rv}) {
        Point2 off = v == sv ? up : down;
        Point2 b{foot.x + off.x, foot.y + off.y};
        Rat t = bisect_radius(norm2(b), one_plus_s2, win_lo, win_hi);
        if (side == 0) t = -t;  // first endpoints leave the disk leftward
        pts[v] = Point2{b.x + t, b.y + t * l.slope};
        height[v] = norm2(pts[v]) - 1;
      }
    }
  }

  // Fillers: each one sits at the tips' squared-radius window, aimed down
  // the middle of its region's sector, barely above the base plane. Low
  // fillers keep every fan edge under the sights that cross the region,
  // and the shared radius window keeps them ahead of inner viewers.
  Rat tip_lo = out.sigma * out.sigma * reach * reach;
  Rat tip_hi = out.sigma * out.sigma * tip2_hi;
  Rat zq = out.sigma * reach / 64;
  for (int k = 0; k < 2 * n; ++k) {
    const auto& walk = ri.region_walks[k];
    const int sz = static_cast<int>(walk.size());
    const int f = ri.fillers[k];
    Point2 ta = pts[walk[0]], tb = pts[walk[sz - 3]];
    Point2 mid = ta + tb;
    if ((1 << 20) * norm2(mid) < tip_lo) {
      mid = Point2{ta.y - tb.y, tb.x - ta.x};
      if (orient2d(Point2{0, 0}, ta, mid) <= 0) mid = Point2{-mid.x, -mid.y};
    }
    Point2 swing{(ta.x - tb.x) / 2, (ta.y - tb.y) / 2};
    bool placed = false;
    for (int round = 0; round < 40 && !placed; ++round) {
      Point2 dir = mid;
      if (round > 0) {
        Rat step = Rat(round % 2 == 1 ? 1 : -1, 1 << ((round + 1) / 2));
        dir = Point2{mid.x + step * swing.x, mid.y + step * swing.y};
      }
      Rat d2 = norm2(dir);
      if (d2 == 0) continue;
      Rat t = bisect_radius(Rat(0), d2, tip_lo, tip_hi);
      Point2 q{t * dir.x, t * dir.y};
      int sign = 0;
      bool inside = true;
      for (int w = 0; w < sz && inside; ++w) {
        int o = orient2d(q, pts[walk[w]], pts[walk[(w + 1) % sz]]);
        if (o == 0 || (sign != 0 && o != sign)) inside = false;
        sign = sign == 0 ? o : sign;
      }
      if (!inside) continue;
      pts[f] = q;
      height[f] = zq;
      placed = true;
    }
    if (!placed)
      throw std::runtime_error("build_realization: filler " + std::to_string(k) +
                               " found no spot inside its region fan");
  }

  // Apexes: on the line past the squared-radius floor, height 2. The floor
  // doubles until every path sits strictly inside both of its apex wedges
  // and every unrelated vertex strictly outside both.
  Rat far = params.far_norm2;
  if (far < 64) far = 64;
  for (int round = 0;; ++round) {
    if (round > 60) throw std::runtime_error("apex wedges failed to separate the paths");
    for (int i = 0; i < n; ++i) {
      const Line& l = out.lines[i];
      Rat one_plus_s2 = 1 + l.slope * l.slope;
      Point2 foot = origin_foot(l);
      Rat foot_n2 = norm2(foot);
      Rat t = 1;
      while (foot_n2 + t * t * one_plus_s2 < far) t *= 2;
      const LineGadget& g = ri.gadgets[i];
      pts[g.o] = line_at(l, foot, -t);
      pts[g.o_prime] = line_at(l, foot, t);
      height[g.o] = 2;
      height[g.o_prime] = 2;
    }
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      const LineGadget& g = ri.gadgets[i];
      std::set<int> family = {g.s, g.r, g.o, g.s_prime, g.r_prime, g.o_prime};
      for (int v = 0; v < total && ok; ++v) {
        if (family.count(v)) continue;
        bool in_a = inside_wedge(pts[g.o], pts[g.r], pts[g.s], pts[v]);
        bool in_b = inside_wedge(pts[g.o_prime], pts[g.r_prime], pts[g.s_prime], pts[v]);
        bool on_path = v < base_count && on_line[i].count(v) > 0;
        if (on_path ? !(in_a && in_b) : (in_a || in_b)) ok = false;
      }
    }
    if (ok) break;
    far *= 2;
  }
  out.far_norm2 = far;

  out.tin.vertices.resize(total);
  for (int v = 0; v < total; ++v)
    out.tin.vertices[v] = Point3{pts[v].x, pts[v].y, height[v]};
  out.tin.faces = ri.t_faces;
  return out;
}

VerifyReport verify_realization(const ReductionInstance& ri, const Tin& tin) {
  VerifyReport report;
  TerrainReport terrain = check_terrain(tin, ri);
  report.terrain_violations = terrain.violations;
  if (static_cast<int>(tin.vertices.size()) != ri.vertex_count()) return report;

  std::vector<std::pair<int, int>> want = ri.t_edges;
  want.insert(want.end(), ri.g_extra.begin(), ri.g_extra.end());
  std::sort(want.begin(), want.end());
  std::vector<std::pair<int, int>> got = visibility_graph(tin);
  std::set_difference(want.begin(), want.end(), got.begin(), got.end(),
                      std::back_inserter(report.missing));
  std::set_difference(got.begin(), got.end(), want.begin(), want.end(),
                      std::back_inserter(report.extra));

  // Silhouette check: each path plus its two apexes spans a projected hull
  // holding no other vertex.
  const int total = ri.vertex_count();
  for (int i = 0; i < ri.n; ++i) {
    const LineGadget& g = ri.gadgets[i];
    std::set<int> members(ri.base.paths[i].begin(), ri.base.paths[i].end());
    members.insert(g.o);
    members.insert(g.o_prime);
    std::vector<Point2> pts;
    for (int v : members) pts.push_back(tin.projection(v));
    std::vector<Point2> hull = convex_hull(pts);
    const int h = static_cast<int>(hull.size());
    if (h < 3) {
      report.hull_failures.push_back("line " + std::to_string(i + 1) +
                                     ": projected hull is degenerate");
      continue;
    }
    for (int v = 0; v < total; ++v) {
      if (members.count(v)) continue;
      Point2 p = tin.projection(v);
      bool outside = false;
      for (int k = 0; k < h && !outside; ++k)
        if (orient2d(hull[k], hull[(k + 1) % h], p) < 0) outside = true;
      if (!outside)
        report.hull_failures.push_back("line " + std::to_string(i + 1) + ": vertex " +
                                       std::to_string(v) + " inside the path hull");
    }
  }
  return report;
}

StretchBack stretch_back(const Tin& tin, const ReductionInstance& ri) {
  const int n = ri.n;
  if (static_cast<int>(tin.vertices.size()) != ri.vertex_count())
    throw std::invalid_argument("stretch_back: vertex count mismatch");

  StretchBack out;
  out.lines.reserve(n);
  for (int i = 0; i < n; ++i) {
    const LineGadget& g = ri.gadgets[i];
    Point2 a = tin.projection(g.o);
    Point2 b = tin.projection(g.o_prime);
    if (a.x == b.x) throw std::runtime_error("stretch_back: apex pair projects vertically");
    Rat slope = (b.y - a.y) / (b.x - a.x);
    out.lines.push_back(Line{slope, a.y - slope * a.x});
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (out.lines[i].slope == out.lines[j].slope)
        throw std::runtime_error("stretch_back: lines " + std::to_string(i + 1) + " and " +
                                 std::to_string(j + 1) + " come out parallel");

  out.flat = ri.base;
  out.flat.eta = 0;
  auto& coords = out.flat.coords;

  // Crossings land on exact intersections, endpoints on perpendicular
  // feet, splits midway between their moved path neighbors, middles at the
  // mean of their star.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Line &li = out.lines[i], &lj = out.lines[j];
      Rat x = (lj.intercept - li.intercept) / (li.slope - lj.slope);
      coords[crossing_vertex(n, i + 1, j + 1)] = Point2{x, li.slope * x + li.intercept};
    }
  for (int i = 0; i < n; ++i) {
    const Line& l = out.lines[i];
    Rat denom = 1 + l.slope * l.slope;
    for (int last = 0; last < 2; ++last) {
      Point2 p = tin.projection(endpoint_vertex(i + 1, last));
      Rat x = (p.x + l.slope * (p.y - l.intercept)) / denom;
      coords[endpoint_vertex(i + 1, last)] = Point2{x, l.slope * x + l.intercept};
    }
  }
  for (int i = 0; i < n; ++i) {
    const auto& path = ri.base.paths[i];
    for (size_t k = 1; k + 1 < path.size(); k += 2) {
      const Point2 &a = coords[path[k - 1]], &b = coords[path[k + 1]];
      coords[path[k]] = Point2{(a.x + b.x) / 2, (a.y + b.y) / 2};
    }
  }
  std::map<int, std::vector<int>> middle_star;
  for (const auto& e : ri.base.edges) {
    if (ri.base.roles[e.first] == VertexRole::middle) middle_star[e.first].push_back(e.second);
    if (ri.base.roles[e.second] == VertexRole::middle) middle_star[e.second].push_back(e.first);
  }
  for (const auto& [m, ring] : middle_star) {
    Point2 sum{0, 0};
    for (int v : ring) sum = sum + coords[v];
    Rat inv(1, static_cast<int>(ring.size()));
    coords[m] = Point2{sum.x * inv, sum.y * inv};
  }

  for (int i = 0; i < n; ++i) {
    const Line& l = out.lines[i];
    const auto& path = ri.base.paths[i];
    for (int v : path)
      if (l.slope * coords[v].x - coords[v].y + l.intercept != 0)
        throw std::runtime_error("stretch_back: path vertex left its line");
    for (size_t k = 2; k < path.size(); k += 2)
      if (!(coords[path[k - 2]].x < coords[path[k]].x))
        throw std::runtime_error("stretch_back: stations of line " + std::to_string(i + 1) +
                                 " left their drawing order");
  }
  return out;
}

RealizeOutcome realize_verified(const ReductionInstance& ri,
                                const std::vector<Line>& lines,
                                const RealizationParams& params) {
  RealizeOutcome out;
  RealizationParams attempt = params;
  for (int round = 0; round < 16; ++round) {
    out.attempts = round + 1;
    out.realization = build_realization(ri, lines, attempt);
    out.report = verify_realization(ri, out.realization.tin);
    if (out.report.ok()) return out;
    attempt.epsilon = out.realization.epsilon / 2;
    attempt.far_norm2 = out.realization.far_norm2 * 2;
    if (round % 2 == 1) attempt.shrink += 1;
  }
  return out;
}

}  // namespace tinvis
