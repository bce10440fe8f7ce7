#pragma once

#include <string>
#include <vector>

#include "tinvis/arrangement.hpp"
#include "tinvis/reduction.hpp"
#include "tinvis/terrain.hpp"

namespace tinvis {

// Tunables for the terrain embedding. Zero epsilon means derive it from
// the scaled drawing's clearances. far_norm2 is the squared-radius floor
// for the apex ring; it doubles internally until the apex wedges isolate
// the paths. shrink adds halvings to the drawing scale.
struct RealizationParams {
  Rat epsilon = 0;
  Rat far_norm2 = 64;
  int shrink = 0;
};

// Exact terrain plus the placement data needed to reason about it or to
// retry with tighter settings.
struct Realization {
  Tin tin;
  std::vector<Line> lines;  // input lines after centering and scaling
  Point2 center{0, 0};      // subtracted from the drawing before scaling
  Rat sigma = 1;            // drawing scale, a power of two
  Rat epsilon = 0;          // guard offset scale actually used
  Rat far_norm2 = 0;        // squared apex radius actually used
};

// Embeds the compiled instance as a terrain. The base triangulation lands
// flat at height zero inside the disk of radius 1/2 around the crossing
// centroid. Each line's guard pairs straddle it at perpendicular offset
// about epsilon, anchored where the line's squared radius passes a
// per-line window near 3.4, and sit exactly on the paraboloid
// z = x^2 + y^2 - 1. Apexes sit on their line at height 2 beyond squared
// radius far_norm2, pushed out until every path lies strictly inside its
// two apex wedges and everything else strictly outside. Each ring region's
// filler sits at the midpoint of its two chord guards, pulled slightly
// toward the origin, at the paraboloid height or 1/32, whichever is
// higher. Requires the instance to come from a straight-line drawing of
// `lines`; throws std::invalid_argument on mismatched input and
// std::runtime_error when a placement step fails.
Realization build_realization(const ReductionInstance& ri,
                              const std::vector<Line>& lines,
                              const RealizationParams& params = {});

// Outcome of checking a terrain against the instance: structural terrain
// defects, visibility-graph mismatches in both directions, and per-line
// silhouette failures (the projected hull of a path plus its apexes must
// contain no other vertex).
struct VerifyReport {
  std::vector<std::string> terrain_violations;
  std::vector<std::pair<int, int>> missing;  // required yet invisible
  std::vector<std::pair<int, int>> extra;    // visible yet not in G
  std::vector<std::string> hull_failures;
  bool ok() const {
    return terrain_violations.empty() && missing.empty() && extra.empty() &&
           hull_failures.empty();
  }
};

VerifyReport verify_realization(const ReductionInstance& ri, const Tin& tin);

// Straightening of an arbitrary terrain realization: lines through the
// projected apex pairs, crossings moved to exact line intersections,
// endpoints to perpendicular feet, splits to neighbor midpoints, middles
// to the mean of their star. Throws std::runtime_error when an apex pair
// projects vertically, two lines come out parallel, or the moved stations
// leave their drawing order.
struct StretchBack {
  std::vector<Line> lines;
  TriangulationInstance flat;  // base triangulation on the moved coords
};

StretchBack stretch_back(const Tin& tin, const ReductionInstance& ri);

// Builds and verifies, retrying with halved epsilon, doubled apex radius,
// and occasional extra shrink until the report is clean or the attempt
// budget runs out. The last attempt is returned either way.
struct RealizeOutcome {
  Realization realization;
  VerifyReport report;
  int attempts = 0;
};

RealizeOutcome realize_verified(const ReductionInstance& ri,
                                const std::vector<Line>& lines,
                                const RealizationParams& params = {});

}  // namespace tinvis
