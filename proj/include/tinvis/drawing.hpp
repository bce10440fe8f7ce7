#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tinvis/arrangement.hpp"
#include "tinvis/geometry.hpp"

namespace tinvis {

// Vertex ids shared by the drawing and triangulation layers. One id space
// covers endpoints and crossings so a drawing and any straightening of it
// correspond vertex by vertex:
//   line i first endpoint  -> 2(i-1)
//   line i last endpoint   -> 2(i-1)+1
//   crossing of {i<j}      -> 2n + lexicographic rank of (i, j)
int endpoint_vertex(int line, bool last);
int crossing_vertex(int n, int i, int j);
inline int drawing_vertex_count(int n) { return 2 * n + n * (n - 1) / 2; }

// One x-monotone polyline per pseudoline, break-points exactly at crossings.
struct PolylineDrawing {
  int n = 0;
  ArrangementSpec spec;
  std::vector<Point2> coords;             // by vertex id
  std::vector<std::vector<int>> stations; // stations[i-1]: vertex ids along line i
  Rat delta;                              // jitter magnitude actually used (0 for straight inputs)
};

// Closed vertex walks per face. Bounded walks are counter-clockwise and
// rotated so the smallest vertex id leads; outer is the unique unbounded
// face's clockwise walk (visits endpoint stubs twice).
struct FaceSet {
  std::vector<std::vector<int>> bounded;
  std::vector<int> outer;
};

class PlacementFailure : public std::runtime_error {
 public:
  explicit PlacementFailure(const std::string& what) : std::runtime_error(what) {}
};

// Deterministic wiring layout for a recognized schedule: event k at x = k,
// endpoints at x = 0 and x = m+1 on exact track heights, crossing heights on
// the swapped boundary's midline plus a small structured jitter. Throws
// PlacementFailure if the invariant check still fails after halving the
// jitter 64 times.
PolylineDrawing reconstruct_drawing(const SweepSchedule& schedule);

// Drawing with every pseudoline a straight line (trivial polyline). Endpoint
// columns are placed strictly outside the crossing span.
PolylineDrawing straight_drawing(const std::vector<Line>& lines, const ArrangementSpec& spec);

// Half-edge face traversal over the exact embedding.
FaceSet extract_faces(const PolylineDrawing& drawing);

struct DrawingReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Verifies every drawing invariant with exact predicates: structure and id
// wiring, strict x-monotonicity, pairwise single transversal crossings with
// no overlaps, strictly interleaved directions at every crossing, convex
// bounded faces, bounded-face count, and Seq conformance.
DrawingReport check_drawing(const PolylineDrawing& drawing, const ArrangementSpec& spec);

}  // namespace tinvis
