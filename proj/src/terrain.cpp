#include "tinvis/terrain.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace tinvis {

namespace {

std::pair<int, int> ordered(int a, int b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); }

// Edge list with projected bounding boxes, so sight tests can skip the
// exact intersection for edges nowhere near the segment.
struct EdgeData {
  std::vector<std::pair<int, int>> edges;  // sorted, a < b
  std::vector<std::array<Rat, 4>> box;     // xmin, xmax, ymin, ymax
};

EdgeData edge_data(const Tin& tin) {
  EdgeData ed;
  ed.edges = tin_edges(tin);
  ed.box.reserve(ed.edges.size());
  for (const auto& [a, b] : ed.edges) {
    Point2 pa = tin.projection(a), pb = tin.projection(b);
    ed.box.push_back({std::min(pa.x, pb.x), std::max(pa.x, pb.x),
                      std::min(pa.y, pb.y), std::max(pa.y, pb.y)});
  }
  return ed;
}

// Core sight test. Without a witness the first blocking crossing ends the
// scan; with one, crossings are ordered along the segment first so the
// reported contact is the nearest to u.
bool sight(const Tin& tin, const EdgeData& ed, int u, int v, BlockWitness* witness) {
  if (std::binary_search(ed.edges.begin(), ed.edges.end(), ordered(u, v))) return true;
  Point2 p = tin.projection(u), q = tin.projection(v);
  Rat zu = tin.vertices[u].z, zv = tin.vertices[v].z;
  const Rat sx_lo = std::min(p.x, q.x), sx_hi = std::max(p.x, q.x);
  const Rat sy_lo = std::min(p.y, q.y), sy_hi = std::max(p.y, q.y);
  // Crossings of the projected sight segment with projected TIN edges,
  // as (segment parameter, surface height) pairs. Only parameters
  // strictly between the endpoints count; a collinear overlap
  // contributes both of its ends.
  std::vector<std::pair<Rat, Rat>> crossings;
  bool any = false;
  for (size_t e = 0; e < ed.edges.size(); ++e) {
    const auto& bx = ed.box[e];
    if (bx[1] < sx_lo || bx[0] > sx_hi || bx[3] < sy_lo || bx[2] > sy_hi) continue;
    const auto& [a, b] = ed.edges[e];
    auto hit = segment_intersection(p, q, tin.projection(a), tin.projection(b));
    if (!hit) continue;
    Rat za = tin.vertices[a].z, zb = tin.vertices[b].z;
    const Rat ts[2] = {hit->t0, hit->t1};
    const Rat us[2] = {hit->u0, hit->u1};
    int ends = hit->collinear ? 2 : 1;
    for (int k = 0; k < ends; ++k) {
      if (ts[k] <= 0 || ts[k] >= 1) continue;
      any = true;
      Rat surf = za + us[k] * (zb - za);
      if (witness) {
        crossings.emplace_back(ts[k], surf);
      } else if (zu + ts[k] * (zv - zu) <= surf) {
        return false;
      }
    }
  }
  if (!any) {
    if (witness) *witness = BlockWitness{};
    return false;
  }
  if (!witness) return true;
  std::sort(crossings.begin(), crossings.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [t, surf] : crossings) {
    Rat seg = zu + t * (zv - zu);
    if (seg <= surf) {
      witness->contact = true;
      witness->at = p + t * (q - p);
      witness->deficit = surf - seg;
      return false;
    }
  }
  return true;
}

}  // namespace

std::vector<std::pair<int, int>> tin_edges(const Tin& tin) {
  std::set<std::pair<int, int>> seen;
  for (const auto& f : tin.faces) {
    seen.insert(ordered(f[0], f[1]));
    seen.insert(ordered(f[1], f[2]));
    seen.insert(ordered(f[0], f[2]));
  }
  return {seen.begin(), seen.end()};
}

bool visible(const Tin& tin, int u, int v, BlockWitness* witness) {
  return sight(tin, edge_data(tin), u, v, witness);
}

std::vector<std::pair<int, int>> visibility_graph(const Tin& tin) {
  EdgeData ed = edge_data(tin);
  std::vector<std::pair<int, int>> out;
  int n = static_cast<int>(tin.vertices.size());
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (sight(tin, ed, u, v, nullptr)) out.emplace_back(u, v);
  return out;
}

std::optional<std::pair<int, int>> check_concave(const Tin& tin) {
  std::map<std::pair<int, int>, std::vector<int>> opposite;
  for (const auto& f : tin.faces) {
    opposite[ordered(f[0], f[1])].push_back(f[2]);
    opposite[ordered(f[1], f[2])].push_back(f[0]);
    opposite[ordered(f[0], f[2])].push_back(f[1]);
  }
  for (const auto& [e, corners] : opposite) {
    if (corners.size() != 2) continue;
    int a = e.first, b = e.second, c = corners[0], d = corners[1];
    if (orient2d(tin.projection(a), tin.projection(b), tin.projection(c)) < 0) std::swap(a, b);
    if (orient3d(tin.vertices[a], tin.vertices[b], tin.vertices[c], tin.vertices[d]) < 0)
      return e;
  }
  return std::nullopt;
}

TerrainReport check_terrain(const Tin& tin, const ReductionInstance& ri) {
  TerrainReport rep;
  auto fail = [&](const std::string& m) { rep.violations.push_back(m); };

  int n = static_cast<int>(tin.vertices.size());
  if (n != ri.vertex_count()) {
    std::ostringstream os;
    os << "terrain has " << n << " vertices, instance has " << ri.vertex_count();
    fail(os.str());
    return rep;
  }

  std::map<std::pair<Rat, Rat>, int> spots;
  for (int i = 0; i < n; ++i) {
    auto [it, fresh] = spots.emplace(std::make_pair(tin.vertices[i].x, tin.vertices[i].y), i);
    if (!fresh) {
      std::ostringstream os;
      os << "vertices " << it->second << " and " << i << " project to the same point";
      fail(os.str());
    }
  }
  if (!rep.ok()) return rep;

  std::vector<std::array<int, 3>> fs;
  for (const auto& f : tin.faces) {
    if (f[0] < 0 || f[0] >= n || f[1] < 0 || f[1] >= n || f[2] < 0 || f[2] >= n ||
        f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) {
      fail("malformed face");
      return rep;
    }
    std::array<int, 3> t = f;
    std::sort(t.begin(), t.end());
    fs.push_back(t);
  }
  std::sort(fs.begin(), fs.end());
  if (fs != ri.t_faces) {
    fail("face set differs from the instance triangulation");
    return rep;
  }
  auto edges = tin_edges(tin);
  if (edges != ri.t_edges) {
    fail("edge set differs from the instance triangulation");
    return rep;
  }

  // Projected edges may meet only at shared endpoints, and never overlap
  // along a stretch.
  int m = static_cast<int>(edges.size());
  for (int i = 0; i < m && rep.ok(); ++i) {
    for (int j = i + 1; j < m; ++j) {
      const auto& e = edges[i];
      const auto& g = edges[j];
      bool share = e.first == g.first || e.first == g.second || e.second == g.first ||
                   e.second == g.second;
      auto hit = segment_intersection(tin.projection(e.first), tin.projection(e.second),
                                      tin.projection(g.first), tin.projection(g.second));
      bool bad = share ? (hit && hit->collinear) : hit.has_value();
      if (bad) {
        std::ostringstream os;
        os << "projected edges (" << e.first << "," << e.second << ") and (" << g.first << ","
           << g.second << ") " << (share ? "overlap" : "cross");
        fail(os.str());
        break;
      }
    }
  }
  if (!rep.ok()) return rep;

  std::vector<Point2> coords;
  coords.reserve(n);
  for (int i = 0; i < n; ++i) coords.push_back(tin.projection(i));
  PlanarFaces pf;
  try {
    pf = planar_faces(coords, edges);
  } catch (const std::exception& ex) {
    fail(std::string("projected embedding rejected: ") + ex.what());
    return rep;
  }

  std::set<std::array<int, 3>> fset(fs.begin(), fs.end());
  std::set<std::array<int, 3>> walked;
  for (const auto& w : pf.bounded) {
    if (w.size() != 3) {
      fail("projected embedding has a non-triangular bounded face");
      return rep;
    }
    std::array<int, 3> t = {w[0], w[1], w[2]};
    std::sort(t.begin(), t.end());
    if (!fset.count(t) || !walked.insert(t).second) {
      fail("projected bounded faces differ from the instance triangles");
      return rep;
    }
  }
  if (walked.size() != fset.size()) {
    fail("projected bounded faces differ from the instance triangles");
    return rep;
  }

  std::vector<int> outer(pf.outer.rbegin(), pf.outer.rend());
  const auto& want = ri.outer_walk;
  bool match = outer.size() == want.size();
  if (match) {
    auto at = std::find(outer.begin(), outer.end(), want[0]);
    match = at != outer.end();
    if (match) {
      std::rotate(outer.begin(), at, outer.end());
      match = outer == want;
    }
  }
  if (!match) fail("projected outer boundary differs from the instance outer walk");
  return rep;
}

}  // namespace tinvis
