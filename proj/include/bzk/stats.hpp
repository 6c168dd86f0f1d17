#pragma once

#include <array>
#include <cstdint>
#include <ostream>

#include "bzk/record.hpp"

namespace bzk {

struct StatsSummary {
  std::uint64_t total = 0;
  std::uint64_t p1_mod24_7 = 0;
  std::uint64_t p1_mod24_15 = 0;
  std::array<std::uint64_t, 3> mod3{};  // indexed by Mod3Class
  std::uint64_t positively_curved = 0;
  std::uint64_t bazaikin_original = 0;
  std::uint64_t min_s = 0, max_s = 0;
  std::uint64_t min_p1 = 0, max_p1 = 0;
  std::array<std::uint64_t, 6> s_mod6{};
  /// Records breaking s odd, s = +-1 mod 6, p1 = 7 mod 8 or p1 mod 24 in {7, 15}.
  std::uint64_t residue_violations = 0;

  /// Over positively curved records (the reference population).
  double bazaikin_fraction_pc() const;
  /// Over all records.
  double bazaikin_fraction_all() const;

  void add(const ManifoldRecord& r);
};

void write_stats(std::ostream& out, const StatsSummary& s);

}  // namespace bzk
