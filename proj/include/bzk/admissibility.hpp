#pragma once

// Freeness, positive curvature and Bazaikin's original conditions.

#include <array>
#include <optional>
#include <span>

#include "bzk/tuples.hpp"

namespace bzk {

/// Unordered pair of disjoint unordered index pairs {{a,b},{c,d}}.
struct PairSplit {
  int a, b, c, d;
};

/// All 45 splits, ordered lexicographically by (a,b,c,d) with a<b, c<d, a<c.
std::span<const PairSplit, 45> pair_splits();

/// First split whose gcd differs from 2, if any.
struct FreenessFailure {
  PairSplit split;
  std::int64_t gcd;
};

std::optional<FreenessFailure> freeness_failure(const QTuple& q);

inline bool is_free(const QTuple& q) { return !freeness_failure(q).has_value(); }

enum class Orientation { Positive, Negative };

/// Base index i0 and sign for which every pairwise sum away from i0 has
/// that sign.
struct CurvatureWitness {
  int base_index;
  Orientation orientation;

  friend bool operator==(const CurvatureWitness&, const CurvatureWitness&) = default;
};

/// Scans all six base indices and both signs. Throws std::logic_error if
/// more than one (i0, sign) qualifies; that would contradict the
/// uniqueness of the positively curved metric.
std::optional<CurvatureWitness> positively_curved(const QTuple& q);

/// Shortcut on the canonical form: q_1 + q_2 > 0.
inline bool positively_curved_canonical(const QTuple& q) { return q[1] + q[2] > 0; }

/// Bazaikin's original sufficient conditions: some presentation has all
/// five entries congruent to the same unit mod 4 (so it can be rewritten
/// with q'_i = (q_i + q_0)/4) and all five entries of one strict sign.
bool bazaikin_original(const QTuple& q);

struct AdmissibilityFlags {
  bool free = false;
  bool positively_curved = false;
  std::optional<CurvatureWitness> pc_witness;
  bool bazaikin_original = false;
};

/// Throws std::invalid_argument on a non-free tuple; curvature is only
/// defined on manifolds.
AdmissibilityFlags admissibility(const QTuple& q);

/// admissibility without the freeness check.
AdmissibilityFlags admissibility_of_free(const QTuple& q);

}  // namespace bzk
