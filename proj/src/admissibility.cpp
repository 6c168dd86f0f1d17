#include "bzk/admissibility.hpp"

#include <numeric>
#include <stdexcept>

namespace bzk {

namespace {

constexpr std::array<PairSplit, 45> make_splits() {
  std::array<PairSplit, 45> out{};
  std::size_t n = 0;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      for (int c = a + 1; c < 6; ++c) {
        if (c == b) continue;
        for (int d = c + 1; d < 6; ++d) {
          if (d == b) continue;
          out[n++] = {a, b, c, d};
        }
      }
  return out;
}

constexpr std::array<PairSplit, 45> kSplits = make_splits();

}  // namespace

std::span<const PairSplit, 45> pair_splits() { return kSplits; }

std::optional<FreenessFailure> freeness_failure(const QTuple& q) {
  for (const auto& sp : kSplits) {
    std::int64_t g = std::gcd(q[sp.a] + q[sp.b], q[sp.c] + q[sp.d]);
    if (g != 2) return FreenessFailure{sp, g};
  }
  return std::nullopt;
}

namespace {

std::optional<CurvatureWitness> scan_curvature(const QTuple& q) {
  std::optional<CurvatureWitness> found;
  for (int i0 = 0; i0 < 6; ++i0) {
    bool all_pos = true;
    bool all_neg = true;
    for (int i = 0; i < 6; ++i) {
      if (i == i0) continue;
      for (int j = i + 1; j < 6; ++j) {
        if (j == i0) continue;
        std::int64_t sum = q[i] + q[j];
        all_pos = all_pos && sum > 0;
        all_neg = all_neg && sum < 0;
      }
    }
    if (!all_pos && !all_neg) continue;
    if (found)
      throw std::logic_error("two positively curved metrics on " + format_tuple(q.values()));
    found = CurvatureWitness{i0, all_pos ? Orientation::Positive : Orientation::Negative};
  }
  return found;
}

}  // namespace

std::optional<CurvatureWitness> positively_curved(const QTuple& q) {
  if (!is_free(q)) throw std::invalid_argument("curvature asked of a non-free tuple");
  return scan_curvature(q);
}

bool bazaikin_original(const QTuple& q) {
  // Rewritability into the primed parametrization (a single unit residue
  // mod 4), plus condition (c), which in unprimed terms says the five
  // remaining entries share one strict sign.
  for (const auto& p : presentations(q)) {
    if (!to_bazaikin_prime(p)) continue;
    bool pos = true;
    bool neg = true;
    for (auto x : p.qbar.values()) {
      pos = pos && x > 0;
      neg = neg && x < 0;
    }
    if (pos || neg) return true;
  }
  return false;
}

AdmissibilityFlags admissibility(const QTuple& q) {
  if (!is_free(q)) throw std::invalid_argument("tuple " + format_tuple(q.values()) + " is not free");
  return admissibility_of_free(q);
}

AdmissibilityFlags admissibility_of_free(const QTuple& q) {
  AdmissibilityFlags f;
  f.free = true;
  f.pc_witness = scan_curvature(q);
  f.positively_curved = f.pc_witness.has_value();
  f.bazaikin_original = bazaikin_original(q);
  return f;
}

}  // namespace bzk
