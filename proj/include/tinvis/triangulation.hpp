#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tinvis/drawing.hpp"

namespace tinvis {

enum class VertexRole { crossing, endpoint, splitting, middle };

std::string role_name(VertexRole role);
std::optional<VertexRole> role_from_name(const std::string& name);

// Splitting vertex ids extend the drawing's layout: line i (1-based) owns
// segments 0..n-1 between consecutive stations.
int splitting_vertex(int n, int line, int segment);

// Inverse of crossing_vertex for ids in [2n, 2n + C(n,2)).
CrossingPair crossing_pair_of(int n, int vertex);

// Triangulated subdivision of a drawing: one splitting vertex per polyline
// segment, one middle vertex per bounded face, star edges from each middle
// to its face's post-splitting boundary walk. Every bounded face of the
// result is a triangle holding exactly one middle vertex.
struct TriangulationInstance {
  int n = 0;
  std::vector<VertexRole> roles;
  std::vector<int> vertex_line;  // owning line for endpoint/splitting ids, 0 otherwise
  bool has_coords = false;
  std::vector<Point2> coords;
  std::vector<std::pair<int, int>> edges;    // a < b, lexicographically sorted
  std::vector<std::vector<int>> paths;       // per line: endpoint, splitting, station, ...
  std::vector<std::array<int, 3>> faces;     // sorted triples, sorted list
  Rat eta = 0;

  int vertex_count() const { return static_cast<int>(roles.size()); }
  bool has_edge(int a, int b) const;
};

struct StarShapeFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct K4Witness {
  std::array<int, 4> vertices;
};

// Splits every segment at its midpoint displaced by eta to the left of the
// segment direction, then star-triangulates each bounded face from a
// middle vertex at the mean of the face's corners. eta starts at
// 1/(2^26 m) and halves until every face stays strictly star-shaped from
// its middle and the embedding stays plane.
TriangulationInstance build_TA(const PolylineDrawing& drawing);

// Nullopt when no four vertices are pairwise adjacent; otherwise one
// witnessing quadruple. Scans common neighborhoods of each edge, which
// finds a K4 iff one exists.
std::optional<K4Witness> check_no_k4(const TriangulationInstance& instance);

// Drops middle vertices and odd-index path vertices, reconnecting the
// even-index stations by straight segments. The crossing registry and Seq
// orders are rebuilt from the surviving crossing ids.
PolylineDrawing extract_arrangement(const TriangulationInstance& instance);

}  // namespace tinvis
