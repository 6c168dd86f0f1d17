#include "bzk/stats.hpp"

#include <algorithm>
#include <iomanip>

namespace bzk {

double StatsSummary::bazaikin_fraction_pc() const {
  return positively_curved == 0 ? 0.0 : static_cast<double>(bazaikin_original) / positively_curved;
}

double StatsSummary::bazaikin_fraction_all() const {
  return total == 0 ? 0.0 : static_cast<double>(bazaikin_original) / total;
}

void StatsSummary::add(const ManifoldRecord& r) {
  const auto& inv = r.inv;
  if (total == 0) {
    min_s = max_s = inv.s;
    min_p1 = max_p1 = inv.p1;
  }
  ++total;
  min_s = std::min(min_s, inv.s);
  max_s = std::max(max_s, inv.s);
  min_p1 = std::min(min_p1, inv.p1);
  max_p1 = std::max(max_p1, inv.p1);
  (inv.p1_mod24 == 7 ? p1_mod24_7 : p1_mod24_15) += 1;
  ++mod3[static_cast<std::size_t>(inv.mod3)];
  ++s_mod6[inv.s % 6];
  if (r.flags.positively_curved) ++positively_curved;
  if (r.flags.bazaikin_original) ++bazaikin_original;

  bool ok = inv.s % 2 == 1 && (inv.s % 6 == 1 || inv.s % 6 == 5) && inv.p1 % 8 == 7 &&
            (inv.p1 % 24 == 7 || inv.p1 % 24 == 15) && static_cast<int>(inv.p1 % 24) == inv.p1_mod24;
  if (!ok) ++residue_violations;
}

void write_stats(std::ostream& out, const StatsSummary& s) {
  out << "records: " << s.total << '\n';
  out << "positively curved: " << s.positively_curved << '\n';
  out << "p1 mod 24 = 7: " << s.p1_mod24_7 << '\n';
  out << "p1 mod 24 = 15: " << s.p1_mod24_15 << '\n';
  for (auto c : {Mod3Class::AllOnes, Mod3Class::ThreeZeros, Mod3Class::Mixed})
    out << "mod 3 " << to_string(c) << ": " << s.mod3[static_cast<std::size_t>(c)] << '\n';
  if (s.total > 0) {
    out << "s range: " << s.min_s << " .. " << s.max_s << '\n';
    out << "p1 range: " << s.min_p1 << " .. " << s.max_p1 << '\n';
  }
  out << "s mod 6:";
  for (std::size_t i = 0; i < 6; ++i) out << ' ' << i << '=' << s.s_mod6[i];
  out << '\n';
  out << "residue violations: " << s.residue_violations << '\n';
  out << std::fixed << std::setprecision(4);
  out << ">> bazaikin_original: " << s.bazaikin_original << " of " << s.positively_curved
      << " positively curved = " << s.bazaikin_fraction_pc() << '\n';
  out << "   (over all records: " << s.bazaikin_fraction_all() << ")\n";
}

}  // namespace bzk
