#pragma once

// Exhaustive enumeration of Bazaikin spaces up to a bound.
//
// Positively curved mode (s <= s_max). In canonical order
// q_0 <= ... <= q_5 with |q_2| <= q_3, positive curvature is q_1 + q_2 > 0,
// which forces q_2..q_5 > 0 and fixes the sign choice. With
// a = q_1 + q_2 and T = q_3 + q_4 + q_5,
//
//   8s = -sigma_3 = a^2 T + a (T^2 + q_1 q_2) + (q_3+q_4)(q_4+q_5)(q_3+q_5).
//
// Here q_1 > -q_2 and q_2 <= q_3 <= T/3 give q_1 q_2 > -T^2/9, so all three
// terms are positive. The last one alone is at least 2 (q_5+1)^2, hence
// q_5 <= sqrt(4 s_max) - 1. For fixed (q_3, q_4, q_5) the value grows with
// q_1 (a and q_1 q_2 both grow); at a = 2 it shrinks as q_2 grows, so q_2 is
// scanned downward from q_3 and q_1 upward from 2 - q_2, and each loop stops
// at the first value above 8 s_max. The a = 2, q_2 = q_3 floor grows with
// q_3 and q_4, which bounds those loops the same way.
//
// General mode (p_1 <= p1_max). p_1 = |q|^2 / 2 and the other five entries
// sum to -q_i, so |q|^2 >= 6/5 q_i^2 and |q_i| <= sqrt(5 p1_max / 3). Given
// q_2..q_5 the admissible q_1 form an interval (q_0 = -(q_1 + S) turns the
// budget into a quadratic in q_1).
//
// The outermost loop runs over q_5. It is the unit of sharding (round-robin
// over odd values), parallel work and checkpointing.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <vector>

#include "bzk/record.hpp"

namespace bzk {

enum class Mode : std::uint8_t { PositivelyCurved = 1, General = 2 };

struct EnumMode {
  Mode kind = Mode::PositivelyCurved;
  std::uint64_t bound = 1;  // s_max or p1_max

  static EnumMode positively_curved(std::uint64_t s_max) { return {Mode::PositivelyCurved, s_max}; }
  static EnumMode general(std::uint64_t p1_max) { return {Mode::General, p1_max}; }

  /// Whether a free record belongs to the mode's result set.
  bool admits(const ManifoldRecord& r) const;
};

struct Shard {
  unsigned index = 0;
  unsigned total = 1;
};

/// Tight: per-prefix pruning. Loose: only the coordinate box, every tuple in
/// it is evaluated. Both must return the same set.
enum class Pruning { Tight, Loose };

struct EnumProgress {
  std::int64_t outer_value;  // q_5 just finished
  std::size_t outer_done;
  std::size_t outer_total;
  std::size_t records;
  double seconds;
};

struct EnumConfig {
  EnumMode mode;
  Shard shard;
  /// 0 picks BZK_THREADS, falling back to the hardware concurrency.
  unsigned threads = 0;
  Pruning pruning = Pruning::Tight;
  /// Sidecar file for resumable runs; empty disables checkpointing.
  std::filesystem::path checkpoint;
  std::function<void(const EnumProgress&)> progress;
};

/// Box containing every canonical admissible tuple of a mode:
/// q_0 >= -max_neg and q_5 <= max_pos, all entries within [-max_neg, max_pos].
struct CoordinateBox {
  std::int64_t max_neg;
  std::int64_t max_pos;

  bool contains(const QTuple& q) const { return q[0] >= -max_neg && q[5] <= max_pos; }
};

/// Throws std::invalid_argument if the box would leave the 2^20 width
/// contract.
CoordinateBox derive_coordinate_bound(const EnumMode& mode, Pruning pruning = Pruning::Tight);

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal consistency failure of the search-space truncation.
class BoundError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Every equivalence class in the mode (and shard) exactly once, sorted by
/// record_less. The result does not depend on thread count; the union over
/// shards is the single-shard result.
std::vector<ManifoldRecord> enumerate(const EnumConfig& cfg);

/// Odd outer-loop values (q_5) scanned by the given mode and shard.
std::vector<std::int64_t> outer_values(const EnumMode& mode, const Shard& shard,
                                       Pruning pruning = Pruning::Tight);

/// All odd five-tuples with |qbar_i| <= coord_bound, canonicalized,
/// deduplicated, free, and admitted by the mode. Sorted by record_less.
std::vector<ManifoldRecord> brute_force_enumerate(std::int64_t coord_bound, const EnumMode& mode);

/// Records whose canonical tuple has all |q_i| <= coord_bound.
std::vector<ManifoldRecord> restrict_to_box(std::span<const ManifoldRecord> records,
                                            std::int64_t coord_bound);

/// Merges individually sorted record lists into one sorted list.
std::vector<ManifoldRecord> merge_sorted(std::vector<std::vector<ManifoldRecord>> parts);

/// Number of worker threads for `requested` (0 = environment default).
unsigned resolve_threads(unsigned requested);

}  // namespace bzk
