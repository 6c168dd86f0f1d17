#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "bzk/tuples.hpp"

namespace bzk::test {

inline QTuple qt(std::string_view text) { return canonicalize(parse_tuple(text)); }

/// Random odd zero-sum six-tuple with the five free entries in [-m, m],
/// shuffled.
inline Six random_six(std::mt19937_64& rng, std::int64_t m) {
  std::uniform_int_distribution<std::int64_t> d(-(m + 1) / 2, (m - 1) / 2);
  Six s{};
  std::int64_t sum = 0;
  for (std::size_t i = 1; i < 6; ++i) {
    s[i] = 2 * d(rng) + 1;
    sum += s[i];
  }
  s[0] = -sum;
  std::shuffle(s.begin(), s.end(), rng);
  return s;
}

/// Every equivalence class with all |q_i| <= n, one canonical tuple each.
/// Scans nondecreasing five-tuples and canonicalizes; independent of the
/// enumerator's scanners.
inline std::vector<QTuple> all_canonical_up_to(std::int64_t n) {
  std::vector<std::int64_t> odd;
  for (std::int64_t x = -n; x <= n; ++x)
    if (x % 2 != 0) odd.push_back(x);
  std::set<QTuple> seen;
  const std::size_t k = odd.size();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b)
      for (std::size_t c = b; c < k; ++c)
        for (std::size_t d = c; d < k; ++d)
          for (std::size_t e = d; e < k; ++e) {
            std::int64_t sum = odd[a] + odd[b] + odd[c] + odd[d] + odd[e];
            if (sum > n || sum < -n) continue;
            seen.insert(canonicalize(RawTuple6({-sum, odd[a], odd[b], odd[c], odd[d], odd[e]})));
          }
  return {seen.begin(), seen.end()};
}

}  // namespace bzk::test
