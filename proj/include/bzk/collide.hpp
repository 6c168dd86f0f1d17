#pragma once

// Grouping of manifold records by exact invariant keys.

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bzk/record.hpp"

namespace bzk {

enum class KeyComponent : std::uint8_t { S, P1, P1Mod24, Lk, P2 };

std::string_view to_string(KeyComponent c);

struct CollisionKeySpec {
  std::vector<KeyComponent> components;

  /// s, lk, p1: homeomorphism invariants.
  static CollisionKeySpec homeo();
  /// s, lk, p1 mod 24: homotopy invariants.
  static CollisionKeySpec htpy();
  /// s, p1, p2.
  static CollisionKeySpec diff_p();
  /// s, p1.
  static CollisionKeySpec coarse();

  /// A preset name (HOMEO, HTPY, DIFF-P, COARSE; case-insensitive) or a
  /// comma list of components from {s, p1, p1_mod24, lk, p2}.
  static CollisionKeySpec parse(std::string_view text);

  std::string describe() const;
  bool has(KeyComponent c) const;
};

using KeyValues = std::vector<std::uint64_t>;

KeyValues key_of(const ManifoldRecord& r, const CollisionKeySpec& spec);

struct CollisionGroup {
  KeyValues key;
  std::uint64_t s = 0;
  std::vector<QTuple> members;  // ascending
};

struct CollisionReport {
  CollisionKeySpec spec;
  std::size_t min_size = 2;
  std::vector<CollisionGroup> groups;  // ascending by key
  std::map<std::size_t, std::size_t> histogram;  // group size -> number of groups
  std::size_t records_seen = 0;

  /// Sum of C(k, 2) over all groups.
  std::uint64_t matching_pairs() const;
};

/// Input was not in ascending s order.
class UnsortedInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Streaming grouper. Records must arrive in ascending s; memory is one
/// s-stratum when the key contains s and the whole input otherwise.
class CollisionFinder {
 public:
  explicit CollisionFinder(CollisionKeySpec spec, std::size_t min_size = 2);

  void add(const ManifoldRecord& r);
  CollisionReport finish();

 private:
  void flush();

  CollisionReport report_;
  std::optional<std::uint64_t> current_s_;
  std::map<KeyValues, std::vector<std::pair<std::uint64_t, QTuple>>> pending_;
};

CollisionReport find_collisions(std::span<const ManifoldRecord> records, const CollisionKeySpec& spec,
                                std::size_t min_size = 2);

/// True iff all members share sigma_1..sigma_4 of q_1..q_5. Throws on
/// fewer than two members or on two equivalent members.
bool compare_symmetric_functions(std::span<const QTuple> group);

std::vector<bool> compare_symmetric_functions(const CollisionReport& report);

/// Subset of invariant values to look for; unset fields match anything.
struct InvariantTarget {
  std::optional<std::uint64_t> s;
  std::optional<std::uint64_t> p1;
  std::optional<int> p1_mod24;
  std::optional<std::uint64_t> lk;
  std::optional<std::uint64_t> p2;
};

std::vector<QTuple> match_target(std::span<const ManifoldRecord> records, const InvariantTarget& target);

/// One row per group member: group,size,<key components>,q1,...,q5.
void write_report_csv(std::ostream& out, const CollisionReport& report);

/// Histogram, pair count and the smallest-s group of each size.
void write_report_summary(std::ostream& out, const CollisionReport& report);

}  // namespace bzk
