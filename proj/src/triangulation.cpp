#include "tinvis/triangulation.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tinvis {

std::string role_name(VertexRole role) {
  switch (role) {
    case VertexRole::crossing: return "crossing";
    case VertexRole::endpoint: return "endpoint";
    case VertexRole::splitting: return "splitting";
    case VertexRole::middle: return "middle";
  }
  return "?";
}

std::optional<VertexRole> role_from_name(const std::string& name) {
  if (name == "crossing") return VertexRole::crossing;
  if (name == "endpoint") return VertexRole::endpoint;
  if (name == "splitting") return VertexRole::splitting;
  if (name == "middle") return VertexRole::middle;
  return std::nullopt;
}

int splitting_vertex(int n, int line, int segment) {
  return drawing_vertex_count(n) + (line - 1) * n + segment;
}

CrossingPair crossing_pair_of(int n, int vertex) {
  int rank = vertex - 2 * n;
  if (rank < 0 || rank >= n * (n - 1) / 2)
    throw std::invalid_argument("crossing_pair_of: id is not a crossing vertex");
  for (int i = 1; i < n; ++i) {
    int block = n - i;
    if (rank < block) return CrossingPair{i, i + 1 + rank};
    rank -= block;
  }
  throw std::logic_error("crossing_pair_of: rank out of range");
}

bool TriangulationInstance::has_edge(int a, int b) const {
  if (a > b) std::swap(a, b);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
}

namespace {

// Plane-embedding test over an explicit edge list: edges may meet only at
// shared endpoints and no vertex may sit in an edge's interior.
bool embedding_is_plane(const std::vector<Point2>& coords,
                        const std::vector<std::pair<int, int>>& edges) {
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [a, b] = edges[e];
    for (std::size_t f = e + 1; f < edges.size(); ++f) {
      auto [c, d] = edges[f];
      bool shared = (a == c || a == d || b == c || b == d);
      auto hit = segment_intersection(coords[a], coords[b], coords[c], coords[d]);
      if (!hit) continue;
      if (hit->collinear) return false;
      if (!shared) return false;
      bool at_shared_point = (hit->t0 == 0 && (a == c || a == d)) ||
                             (hit->t0 == 1 && (b == c || b == d));
      if (!at_shared_point) return false;
    }
  }
  for (std::size_t v = 0; v < coords.size(); ++v) {
    for (const auto& [a, b] : edges) {
      if (static_cast<int>(v) == a || static_cast<int>(v) == b) continue;
      if (on_segment(coords[v], coords[a], coords[b])) return false;
    }
  }
  return true;
}

}  // namespace

TriangulationInstance build_TA(const PolylineDrawing& drawing) {
  int n = drawing.n;
  if (n < 3) throw std::invalid_argument("build_TA: need at least 3 lines for a bounded face");
  DrawingReport rep = check_drawing(drawing, drawing.spec);
  if (!rep.ok())
    throw std::invalid_argument("build_TA: drawing fails validation: " + rep.violations.front());

  int m = n * (n - 1) / 2;
  int base = drawing_vertex_count(n);
  FaceSet fs = extract_faces(drawing);
  int middles = static_cast<int>(fs.bounded.size());
  int total = base + n * n + middles;

  TriangulationInstance inst;
  inst.n = n;
  inst.roles.assign(total, VertexRole::middle);
  inst.vertex_line.assign(total, 0);
  inst.has_coords = true;
  inst.coords.assign(total, Point2{0, 0});
  for (int i = 1; i <= n; ++i) {
    for (bool last : {false, true}) {
      int v = endpoint_vertex(i, last);
      inst.roles[v] = VertexRole::endpoint;
      inst.vertex_line[v] = i;
      inst.coords[v] = drawing.coords[v];
    }
    for (int s = 0; s < n; ++s) {
      int v = splitting_vertex(n, i, s);
      inst.roles[v] = VertexRole::splitting;
      inst.vertex_line[v] = i;
    }
  }
  for (int v = 2 * n; v < base; ++v) {
    inst.roles[v] = VertexRole::crossing;
    inst.coords[v] = drawing.coords[v];
  }

  // Middle vertices sit at the mean of their face's corners, which is
  // interior because every bounded face is strictly convex.
  std::vector<Point2> mid_pts(middles, Point2{0, 0});
  for (int f = 0; f < middles; ++f) {
    const auto& walk = fs.bounded[f];
    Point2 sum{0, 0};
    for (int v : walk) sum = sum + drawing.coords[v];
    Rat inv(1, static_cast<int>(walk.size()));
    mid_pts[f] = Point2{sum.x * inv, sum.y * inv};
    inst.coords[base + n * n + f] = mid_pts[f];
  }

  std::map<std::pair<int, int>, int> seg_split;  // undirected station pair -> split id
  for (int i = 1; i <= n; ++i) {
    const auto& st = drawing.stations[i - 1];
    for (int s = 0; s < n; ++s) {
      int u = st[s], v = st[s + 1];
      seg_split[{std::min(u, v), std::max(u, v)}] = splitting_vertex(n, i, s);
    }
  }

  // Splits sit far closer to their segment than any later construction
  // scale, so downstream perturbations never have to re-clear them.
  Rat eta = Rat(1, m) / (1 << 26);
  for (int attempt = 0; attempt < 64; ++attempt) {
    for (int i = 1; i <= n; ++i) {
      const auto& st = drawing.stations[i - 1];
      for (int s = 0; s < n; ++s) {
        Point2 a = drawing.coords[st[s]], b = drawing.coords[st[s + 1]];
        Point2 d = b - a;
        Rat scale = std::max(rat_abs(d.x), rat_abs(d.y));
        Point2 left{-d.y / scale, d.x / scale};
        Point2 mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
        inst.coords[splitting_vertex(n, i, s)] = mid + eta * left;
      }
    }

    std::set<std::pair<int, int>> edge_set;
    auto add_edge = [&](int a, int b) {
      edge_set.insert({std::min(a, b), std::max(a, b)});
    };
    std::vector<std::array<int, 3>> faces;
    inst.paths.assign(n, {});
    for (int i = 1; i <= n; ++i) {
      const auto& st = drawing.stations[i - 1];
      auto& path = inst.paths[i - 1];
      for (int s = 0; s < n; ++s) {
        path.push_back(st[s]);
        path.push_back(splitting_vertex(n, i, s));
      }
      path.push_back(st[n]);
      for (std::size_t k = 0; k + 1 < path.size(); ++k) add_edge(path[k], path[k + 1]);
    }

    bool star_ok = true;
    for (int f = 0; f < middles && star_ok; ++f) {
      const auto& walk = fs.bounded[f];
      int mid_id = base + n * n + f;
      std::vector<int> post;
      std::size_t sz = walk.size();
      for (std::size_t t = 0; t < sz; ++t) {
        int u = walk[t], v = walk[(t + 1) % sz];
        post.push_back(u);
        post.push_back(seg_split.at({std::min(u, v), std::max(u, v)}));
      }
      for (int v : post) add_edge(mid_id, v);
      for (std::size_t t = 0; t < post.size(); ++t) {
        int u = post[t], v = post[(t + 1) % post.size()];
        faces.push_back({mid_id, u, v});
        auto& tri = faces.back();
        std::sort(tri.begin(), tri.end());
        if (orient2d(mid_pts[f], inst.coords[u], inst.coords[v]) <= 0) {
          star_ok = false;
          break;
        }
      }
    }

    if (star_ok) {
      inst.edges.assign(edge_set.begin(), edge_set.end());
      if (embedding_is_plane(inst.coords, inst.edges)) {
        std::sort(faces.begin(), faces.end());
        inst.faces = std::move(faces);
        inst.eta = eta;
        return inst;
      }
    }
    eta /= 2;
  }
  throw StarShapeFailure("build_TA: no splitting displacement kept all faces star-shaped");
}

std::optional<K4Witness> check_no_k4(const TriangulationInstance& instance) {
  int v = instance.vertex_count();
  std::vector<std::vector<int>> adj(v);
  for (const auto& [a, b] : instance.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  for (const auto& [a, b] : instance.edges) {
    std::vector<int> common;
    std::set_intersection(adj[a].begin(), adj[a].end(), adj[b].begin(), adj[b].end(),
                          std::back_inserter(common));
    for (std::size_t i = 0; i < common.size(); ++i) {
      for (std::size_t j = i + 1; j < common.size(); ++j) {
        if (instance.has_edge(common[i], common[j]))
          return K4Witness{{a, b, common[i], common[j]}};
      }
    }
  }
  return std::nullopt;
}

PolylineDrawing extract_arrangement(const TriangulationInstance& instance) {
  int n = static_cast<int>(instance.paths.size());
  if (!instance.has_coords)
    throw std::invalid_argument("extract_arrangement: coordinates required");
  PolylineDrawing d;
  d.n = n;
  d.delta = 0;
  d.coords.assign(drawing_vertex_count(n), Point2{0, 0});
  d.stations.assign(n, {});
  d.spec.n = n;
  d.spec.seq.assign(n, {});

  for (int i = 1; i <= n; ++i) {
    const auto& path = instance.paths[i - 1];
    if (path.size() != static_cast<std::size_t>(2 * n + 1))
      throw std::invalid_argument("extract_arrangement: path of line " + std::to_string(i) +
                                  " has wrong length");
    for (std::size_t k = 0; k < path.size(); ++k) {
      VertexRole role = instance.roles[path[k]];
      bool even = k % 2 == 0;
      bool ok = even ? (role == VertexRole::endpoint || role == VertexRole::crossing)
                     : role == VertexRole::splitting;
      if (!ok)
        throw std::invalid_argument("extract_arrangement: role mismatch at path index " +
                                    std::to_string(k) + " of line " + std::to_string(i));
    }
    if (instance.roles[path.front()] != VertexRole::endpoint ||
        instance.roles[path.back()] != VertexRole::endpoint)
      throw std::invalid_argument("extract_arrangement: path must start and end at endpoints");
    for (std::size_t k = 0; k < path.size(); k += 2) {
      d.stations[i - 1].push_back(path[k]);
      d.coords[path[k]] = instance.coords[path[k]];
      if (k > 0 && k + 1 < path.size()) {
        CrossingPair pr = crossing_pair_of(n, path[k]);
        d.spec.seq[i - 1].push_back(pr.a == i ? pr.b : pr.a);
      }
    }
  }

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i + 1;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return d.coords[d.stations[a - 1].front()].y > d.coords[d.stations[b - 1].front()].y;
  });
  d.spec.initial_order = order;
  return d;
}

}  // namespace tinvis
