#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace tinvis {

// Exact rational scalar used throughout the library. All geometric
// predicates and constructions are evaluated in Rat; floating point
// appears only in SVG output and in test-side sampling oracles.
using Rat = mpq_class;

// Parses "p", "-p", "p/q" (optional sign on p, positive q). Returns
// std::nullopt on malformed text or zero denominator.
std::optional<Rat> rat_from_string(const std::string& text);

// Canonical "p" or "p/q" form, lowest terms, sign on the numerator.
std::string rat_to_string(const Rat& value);

inline int rat_sign(const Rat& value) { return sgn(value); }

inline Rat rat_abs(const Rat& value) { return value < 0 ? Rat(-value) : value; }

// Largest power of two 2^-k with k >= 0, start / 2^k <= it, whose square
// is at most `square_bound`. Used to pick exact step sizes below an
// irrational threshold sqrt(square_bound). Requires square_bound > 0.
Rat dyadic_below_sqrt(const Rat& square_bound, const Rat& start);

// Dyadic value d with d*d <= square_bound whose square exceeds
// square_bound / 4^refine... more precisely: starts from
// dyadic_below_sqrt(square_bound, start) and bisects upward `refine`
// times, so sqrt(square_bound) * (1 - 2^-refine) < d <= sqrt(square_bound).
Rat dyadic_near_sqrt(const Rat& square_bound, const Rat& start, int refine = 24);

// Smallest power of two whose square is at least `square_bound`.
// Requires square_bound > 0.
Rat dyadic_above_sqrt(const Rat& square_bound);

}  // namespace tinvis
