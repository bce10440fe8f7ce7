#include "tinvis/drawing.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace tinvis {

int endpoint_vertex(int line, bool last) { return 2 * (line - 1) + (last ? 1 : 0); }

int crossing_vertex(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  int rank = (i - 1) * (2 * n - i) / 2 + (j - i - 1);
  return 2 * n + rank;
}

namespace {

// Per-event placement data recovered from the schedule. Rows are 0-based top
// to bottom; an event at boundary b swaps the occupants of rows b and b+1.
struct EventSlot {
  int column = 0;    // x = 1-based event index
  int boundary = 0;  // 0-based upper row
  int upper = 0;     // line going down
  int lower = 0;     // line going up
};

std::vector<EventSlot> event_slots(const SweepSchedule& schedule) {
  int n = schedule.spec.n;
  std::vector<EventSlot> slots(schedule.events.size());
  for (std::size_t k = 0; k < schedule.events.size(); ++k) {
    const auto& order = schedule.order_before[k];
    const auto& ev = schedule.events[k];
    int pa = -1, pb = -1;
    for (int r = 0; r < n; ++r) {
      if (order[r] == ev.a) pa = r;
      if (order[r] == ev.b) pb = r;
    }
    EventSlot s;
    s.column = static_cast<int>(k) + 1;
    s.boundary = std::min(pa, pb);
    s.upper = order[s.boundary];
    s.lower = order[s.boundary + 1];
    slots[k] = s;
  }
  return slots;
}

// Jitter heights for every event of one boundary. Columns arrive in event
// order. A gap between consecutive boundary events carries a near-horizontal
// wire chord when one wire sits in the boundary's row pair across the whole
// gap: a valley (the down-swapper of the left event returns up at the right
// event) or a peak (the up-swapper drops back down). Consecutive valley gaps
// take strictly decreasing chord slopes and consecutive peak gaps strictly
// increasing ones, which keeps the four directions at every crossing
// interleaved; all other gaps reset to slope zero.
std::map<int, Rat> boundary_jitter(const std::vector<const EventSlot*>& evs, const Rat& delta,
                                   const Rat& step) {
  enum class Gap { none, valley, peak };
  std::map<int, Rat> jitter;
  if (evs.empty()) return jitter;
  jitter[evs[0]->column] = delta;
  Gap prev_kind = Gap::none;
  Rat prev_slope = 0;
  for (std::size_t i = 0; i + 1 < evs.size(); ++i) {
    const EventSlot& l = *evs[i];
    const EventSlot& r = *evs[i + 1];
    Gap kind = Gap::none;
    if (l.upper == r.lower) kind = Gap::valley;   // l.upper went down, comes back up
    else if (l.lower == r.upper) kind = Gap::peak;  // l.lower went up, drops back
    Rat slope = 0;
    if (kind == Gap::valley && prev_kind == Gap::valley) slope = prev_slope - step;
    else if (kind == Gap::peak && prev_kind == Gap::peak) slope = prev_slope + step;
    jitter[r.column] = jitter[l.column] + slope * (r.column - l.column);
    prev_kind = kind;
    prev_slope = slope;
  }
  return jitter;
}

PolylineDrawing place_once(const SweepSchedule& schedule, const Rat& delta) {
  const ArrangementSpec& spec = schedule.spec;
  int n = spec.n;
  int m = n * (n - 1) / 2;
  auto slots = event_slots(schedule);

  std::vector<std::vector<const EventSlot*>> per_boundary(std::max(0, n - 1));
  for (const auto& s : slots) per_boundary[s.boundary].push_back(&s);

  Rat step = delta / (2 * (m > 0 ? m : 1) * (m + 1));
  PolylineDrawing d;
  d.n = n;
  d.spec = spec;
  d.delta = delta;
  d.coords.assign(drawing_vertex_count(n), Point2{0, 0});

  for (int b = 0; b < n - 1; ++b) {
    auto jit = boundary_jitter(per_boundary[b], delta, step);
    Rat base = Rat(2 * n - 2 * b - 1, 2);  // midline between row heights n-b and n-b-1
    for (const EventSlot* s : per_boundary[b]) {
      int v = crossing_vertex(n, s->upper, s->lower);
      d.coords[v] = Point2{Rat(s->column), base + jit.at(s->column)};
    }
  }
  for (int i = 1; i <= n; ++i) {
    int r0 = -1, rf = -1;
    for (int r = 0; r < n; ++r) {
      if (spec.initial_order[r] == i) r0 = r;
    }
    rf = n - 1 - r0;  // every pair swaps once, so the order ends reversed
    d.coords[endpoint_vertex(i, false)] = Point2{0, Rat(n - r0)};
    d.coords[endpoint_vertex(i, true)] = Point2{Rat(m + 1), Rat(n - rf)};
  }
  d.stations.assign(n, {});
  for (int i = 1; i <= n; ++i) {
    d.stations[i - 1].push_back(endpoint_vertex(i, false));
    for (int partner : spec.seq[i - 1])
      d.stations[i - 1].push_back(crossing_vertex(n, i, partner));
    d.stations[i - 1].push_back(endpoint_vertex(i, true));
  }
  return d;
}

// Chord (line, k) covers stations k, k+1 of that line.
struct ChordRef {
  int line, k;
};

std::vector<std::string> prefix(const std::vector<std::string>& v, std::size_t cap = 16) {
  if (v.size() <= cap) return v;
  std::vector<std::string> out(v.begin(), v.begin() + cap);
  out.push_back("... (" + std::to_string(v.size() - cap) + " more)");
  return out;
}

}  // namespace

PolylineDrawing reconstruct_drawing(const SweepSchedule& schedule) {
  int m = schedule.spec.n * (schedule.spec.n - 1) / 2;
  Rat delta = Rat(1, 4 * m + 4);
  DrawingReport last;
  for (int attempt = 0; attempt < 64; ++attempt) {
    PolylineDrawing d = place_once(schedule, delta);
    last = check_drawing(d, schedule.spec);
    if (last.ok()) return d;
    delta /= 2;
  }
  throw PlacementFailure("placement failed after 64 jitter halvings; first violation: " +
                         last.violations.front());
}

PolylineDrawing straight_drawing(const std::vector<Line>& lines, const ArrangementSpec& spec) {
  int n = static_cast<int>(lines.size());
  if (n != spec.n) throw std::invalid_argument("straight_drawing: line count mismatch");
  auto xs = crossing_order(lines);
  Rat xl = xs.empty() ? Rat(0) : xs.front().first - 1;
  Rat xr = xs.empty() ? Rat(1) : xs.back().first + 1;

  PolylineDrawing d;
  d.n = n;
  d.spec = spec;
  d.delta = 0;
  d.coords.assign(drawing_vertex_count(n), Point2{0, 0});
  auto at = [&](int line, const Rat& x) {
    return Point2{x, lines[line - 1].slope * x + lines[line - 1].intercept};
  };
  for (int i = 1; i <= n; ++i) {
    d.coords[endpoint_vertex(i, false)] = at(i, xl);
    d.coords[endpoint_vertex(i, true)] = at(i, xr);
  }
  for (const auto& [x, pr] : xs) d.coords[crossing_vertex(n, pr.a, pr.b)] = at(pr.a, x);
  d.stations.assign(n, {});
  for (int i = 1; i <= n; ++i) {
    d.stations[i - 1].push_back(endpoint_vertex(i, false));
    for (int partner : spec.seq[i - 1])
      d.stations[i - 1].push_back(crossing_vertex(n, i, partner));
    d.stations[i - 1].push_back(endpoint_vertex(i, true));
  }
  return d;
}

FaceSet extract_faces(const PolylineDrawing& d) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& st : d.stations)
    for (std::size_t k = 0; k + 1 < st.size(); ++k) edges.emplace_back(st[k], st[k + 1]);
  PlanarFaces pf = planar_faces(d.coords, edges);
  FaceSet out;
  out.outer = std::move(pf.outer);
  for (auto& walk : pf.bounded) {
    auto mn = std::min_element(walk.begin(), walk.end());
    std::rotate(walk.begin(), mn, walk.end());
    out.bounded.push_back(std::move(walk));
  }
  std::sort(out.bounded.begin(), out.bounded.end());
  return out;
}

DrawingReport check_drawing(const PolylineDrawing& d, const ArrangementSpec& spec) {
  DrawingReport rep;
  auto fail = [&](const std::string& s) { rep.violations.push_back(s); };

  if (auto problem = validate_spec(spec)) {
    fail("spec: " + *problem);
    return rep;
  }
  int n = spec.n;
  if (d.n != n) {
    fail("structure: drawing n != spec n");
    return rep;
  }
  if (static_cast<int>(d.coords.size()) != drawing_vertex_count(n) ||
      static_cast<int>(d.stations.size()) != n) {
    fail("structure: wrong vertex or polyline count");
    return rep;
  }
  for (int i = 1; i <= n; ++i) {
    const auto& st = d.stations[i - 1];
    if (static_cast<int>(st.size()) != n + 1) {
      fail("structure: line " + std::to_string(i) + " does not have n+1 stations");
      return rep;
    }
    if (st.front() != endpoint_vertex(i, false) || st.back() != endpoint_vertex(i, true))
      fail("structure: line " + std::to_string(i) + " endpoints miswired");
    for (std::size_t k = 1; k + 1 < st.size(); ++k) {
      int expect = crossing_vertex(n, i, spec.seq[i - 1][k - 1]);
      if (st[k] != expect)
        fail("conformance: line " + std::to_string(i) + " station " + std::to_string(k) +
             " does not match Seq");
    }
    for (std::size_t k = 0; k + 1 < st.size(); ++k) {
      if (!(d.coords[st[k]].x < d.coords[st[k + 1]].x)) {
        fail("monotone: line " + std::to_string(i) + " x does not strictly increase at station " +
             std::to_string(k));
        return rep;
      }
    }
  }
  if (!rep.ok()) return rep;  // wiring must be sound before geometric checks

  // Pairwise chord intersections: distinct lines meet exactly at their shared
  // crossing point; same-line chords touch only at shared stations.
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      const auto& si = d.stations[i - 1];
      const auto& sj = d.stations[j - 1];
      Point2 pij{0, 0};
      if (i != j) pij = d.coords[crossing_vertex(n, i, j)];
      for (std::size_t a = 0; a + 1 < si.size(); ++a) {
        for (std::size_t b = (i == j ? a + 1 : 0); b + 1 < sj.size(); ++b) {
          auto hit = segment_intersection(d.coords[si[a]], d.coords[si[a + 1]], d.coords[sj[b]],
                                          d.coords[sj[b + 1]]);
          if (!hit) continue;
          if (hit->collinear) {
            fail("crossing: lines " + std::to_string(i) + "," + std::to_string(j) +
                 " overlap along a segment");
            continue;
          }
          Point2 p = d.coords[si[a]] + hit->t0 * (d.coords[si[a + 1]] - d.coords[si[a]]);
          if (i == j) {
            if (!(b == a + 1 && p == d.coords[si[a + 1]]))
              fail("crossing: line " + std::to_string(i) + " self-intersects off-station");
          } else if (p != pij) {
            fail("crossing: lines " + std::to_string(i) + "," + std::to_string(j) +
                 " meet away from their registered crossing");
          }
        }
      }
    }
  }

  // Strict direction interleaving at every crossing.
  for (int i = 1; i <= n; ++i) {
    const auto& st = d.stations[i - 1];
    for (std::size_t k = 1; k + 1 < st.size(); ++k) {
      int v = st[k];
      int partner = spec.seq[i - 1][k - 1];
      if (partner < i) continue;  // handle each crossing once
      const auto& stp = d.stations[partner - 1];
      std::size_t kp = 0;
      for (std::size_t t = 1; t + 1 < stp.size(); ++t)
        if (stp[t] == v) kp = t;
      std::vector<Point2> dirs = {
          d.coords[st[k - 1]] - d.coords[v], d.coords[st[k + 1]] - d.coords[v],
          d.coords[stp[kp - 1]] - d.coords[v], d.coords[stp[kp + 1]] - d.coords[v]};
      std::sort(dirs.begin(), dirs.end(), angle_less);
      for (int t = 0; t < 4; ++t) {
        if (rat_sign(cross(dirs[t], dirs[(t + 1) % 4])) <= 0)
          fail("gap: crossing of " + std::to_string(i) + "," + std::to_string(partner) +
               " has an angular gap of pi or more");
      }
    }
  }

  // Face structure: count and strict convexity of every bounded face.
  FaceSet faces = extract_faces(d);
  int expected = (n - 1) * (n - 2) / 2;
  if (static_cast<int>(faces.bounded.size()) != expected)
    fail("faces: bounded face count " + std::to_string(faces.bounded.size()) + " != " +
         std::to_string(expected));
  for (const auto& walk : faces.bounded) {
    for (int v : walk) {
      if (v < 2 * n) fail("faces: bounded face touches an endpoint stub");
    }
    std::size_t sz = walk.size();
    for (std::size_t t = 0; t < sz; ++t) {
      const Point2& a = d.coords[walk[t]];
      const Point2& b = d.coords[walk[(t + 1) % sz]];
      const Point2& c = d.coords[walk[(t + 2) % sz]];
      if (orient2d(a, b, c) <= 0) {
        fail("convexity: bounded face has a non-convex corner at vertex " +
             std::to_string(walk[(t + 1) % sz]));
        break;
      }
    }
  }
  rep.violations = prefix(rep.violations, 64);
  return rep;
}

}  // namespace tinvis
