#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tinvis/geometry.hpp"
#include "tinvis/reduction.hpp"

namespace tinvis {

// A lifted triangulation: exact vertex coordinates plus triangular faces
// indexing into them. The surface is the union of the lifted triangles.
// The visibility routines assume the faces project to a crossing-free
// plane triangulation; check_terrain verifies that assumption against
// the instance the terrain is supposed to realize.
struct Tin {
  std::vector<Point3> vertices;
  std::vector<std::array<int, 3>> faces;

  Point2 projection(int v) const { return {vertices[v].x, vertices[v].y}; }
};

// Sorted list of the distinct edges appearing in at least one face.
std::vector<std::pair<int, int>> tin_edges(const Tin& tin);

// Where and why a sight line fails. When contact is false the open
// segment between the two vertices never crosses an edge of the surface,
// which blocks by definition. Otherwise at and deficit describe the
// first crossing, in order along the segment, where the surface reaches
// the sight line (deficit = surface height minus segment height there).
struct BlockWitness {
  bool contact = false;
  Point2 at;
  Rat deficit = 0;
};

// Two terrain vertices see each other when they share a TIN edge, or
// when the open sight segment between them crosses at least one TIN edge
// in projection and passes strictly above the surface at every such
// crossing. Touching the surface blocks, and so does a segment with no
// crossings at all.
bool visible(const Tin& tin, int u, int v, BlockWitness* witness = nullptr);

// All visible pairs, sorted. Contains every TIN edge.
std::vector<std::pair<int, int>> visibility_graph(const Tin& tin);

// Checks that the surface bends the same way across every interior edge:
// for each edge shared by two faces, the far corner of one face must lie
// weakly above the plane of the other. Returns the first violating edge,
// or nothing when the surface passes.
std::optional<std::pair<int, int>> check_concave(const Tin& tin);

struct TerrainReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Structural validation of a terrain against the instance it is meant to
// realize: matching vertex count, pairwise distinct projections, exactly
// the instance's faces and triangulation edges, a projected embedding
// whose edges meet only at shared endpoints, bounded faces that are the
// instance's triangles, and an outer boundary equal to the instance's
// outer walk up to rotation.
TerrainReport check_terrain(const Tin& tin, const ReductionInstance& ri);

}  // namespace tinvis
