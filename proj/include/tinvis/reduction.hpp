#pragma once

#include <string>
#include <vector>

#include "tinvis/triangulation.hpp"

namespace tinvis {

// Vertex classes of the compiled instance. Base vertices keep their
// triangulation role; the six per-line additions and the ring fillers get
// their own tags.
enum class GadgetRole {
  base,
  guard_s,
  guard_r,
  apex_o,
  guard_s_prime,
  guard_r_prime,
  apex_o_prime,
  filler,
};

std::string gadget_role_name(GadgetRole role);

// Ids of the six vertices appended for one line: s/r flank the line's first
// endpoint side, the primed pair flanks the last endpoint side, and the two
// apexes sit beyond them on the line itself.
struct LineGadget {
  int s = -1, r = -1, o = -1;
  int s_prime = -1, r_prime = -1, o_prime = -1;
};

// Triangulation T_A extended to a visibility instance <G, T>. T adds, per
// line, two guard triangles and an apex around each endpoint, a cycle of
// guard-to-guard edges closing a ring around the old outer face, and one
// filler vertex star-triangulating each region of that ring. G adds, on
// top of T, total adjacency from every guard and filler to everything
// except the apexes, and per-apex adjacency to its own line's path, its
// line's four guards, and the opposite apex.
struct ReductionInstance {
  TriangulationInstance base;
  int n = 0;
  std::vector<int> walk_order;  // lines by first-endpoint order along the old outer walk
  std::vector<GadgetRole> roles;        // by vertex id, base-range entries = base
  std::vector<int> role_line;           // owning line for gadget vertices, 0 otherwise
  std::vector<LineGadget> gadgets;      // gadgets[i-1]: line i
  std::vector<int> fillers;             // ring order: n-1 first-side, bridge, n-1 last-side, bridge
  std::vector<std::vector<int>> region_walks;  // per filler: its region's boundary cycle
  std::vector<std::pair<int, int>> t_edges;    // a < b, sorted
  std::vector<std::pair<int, int>> g_extra;    // G minus T, a < b, sorted
  std::vector<std::array<int, 3>> t_faces;     // sorted triples, sorted list
  std::vector<int> outer_walk;                 // counter-clockwise, starts at first gadget's s

  int vertex_count() const { return static_cast<int>(roles.size()); }
  bool t_has(int a, int b) const;
  bool g_has(int a, int b) const;  // T or extra
};

// Counter-clockwise outer face walk of the triangulation's embedding,
// rotated to start at the first endpoint whose line leads the endpoint
// sequence. Endpoint tips appear once, their stub neighbors twice. Throws
// std::invalid_argument when the instance carries no coordinates or the
// embedding is not connected.
std::vector<int> outer_walk(const TriangulationInstance& instance);

// Builds the full instance. Requires coordinates, n >= 3, and no K4 in the
// triangulation's edge set; throws std::invalid_argument otherwise.
ReductionInstance compile_reduction(const TriangulationInstance& base);

struct ReductionReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Re-derives every structural invariant from the stored sets alone:
// vertex count, role wiring, T-inside-G disjointness, triangular faces with
// each T edge on exactly two of (face, outer-walk side), apex T- and
// G-neighborhood exactness, guard/filler total adjacency, middles reached
// in G minus T only from guards and fillers, filler stars matching their
// region walks, and an outer walk that is a simple 6n-cycle of gadget
// vertices in ring order without T-chords.
ReductionReport check_instance(const ReductionInstance& ri);

}  // namespace tinvis
