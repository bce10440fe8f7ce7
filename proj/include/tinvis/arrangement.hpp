#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tinvis/geometry.hpp"

namespace tinvis {

// Combinatorial description of n pseudolines crossing pairwise exactly once.
// Lines carry ids 1..n. initial_order lists ids from top to bottom at the far
// left of the sweep; seq[i-1] lists the partners of line i in left-to-right
// crossing order along line i.
struct ArrangementSpec {
  int n = 0;
  std::vector<int> initial_order;
  std::vector<std::vector<int>> seq;
};

// Unordered crossing pair, stored with a < b.
struct CrossingPair {
  int a = 0, b = 0;
  bool operator==(const CrossingPair& o) const { return a == o.a && b == o.b; }
};

inline CrossingPair make_pair_sorted(int i, int j) {
  return i < j ? CrossingPair{i, j} : CrossingPair{j, i};
}

// Witness of a successful recognition: an execution of all n(n-1)/2 adjacent
// swaps that is consistent with every line's sequence and ends at the
// reversal of initial_order.
struct SweepSchedule {
  ArrangementSpec spec;
  std::vector<CrossingPair> events;
  std::vector<std::vector<int>> order_before;  // vertical order ahead of each event
  std::vector<int> final_order;
};

// Witness of a failed recognition: the sweep stalls with no adjacent pair
// whose sequences demand each other next.
struct Unrealizable {
  std::vector<int> stuck_order;
  std::vector<int> next_expected;  // per line id (index id-1); 0 when exhausted
  int events_done = 0;
};

// First structural problem with a spec (sizes, permutation properties), or
// nullopt when well-formed. Realizability is sweep_schedule's job.
std::optional<std::string> validate_spec(const ArrangementSpec& spec);

// Greedy ready-swap recognition. Among simultaneously ready adjacent pairs
// the bottommost one is swapped first. Requires validate_spec to pass.
std::variant<SweepSchedule, Unrealizable> sweep_schedule(const ArrangementSpec& spec);

// y = slope * x + intercept.
struct Line {
  Rat slope, intercept;
};

// Crossing points of all pairs sorted by x. Throws std::invalid_argument on
// parallel pairs or three concurrent lines.
std::vector<std::pair<Rat, CrossingPair>> crossing_order(const std::vector<Line>& lines);

// Combinatorial spec induced by concrete lines in general position.
ArrangementSpec arrangement_from_lines(const std::vector<Line>& lines);

// Checks that `events` is itself a valid ready-swap execution for the spec.
bool is_valid_execution(const ArrangementSpec& spec, const std::vector<CrossingPair>& events);

}  // namespace tinvis
