#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "bzk/admissibility.hpp"
#include "bzk/integer.hpp"
#include "support.hpp"

using namespace bzk;
using bzk::test::qt;

namespace {

// Freeness straight from the definition, over all orderings of the six
// entries: gcd(q_a+q_b, q_c+q_d) for the first four positions.
bool free_by_permutations(const Six& q) {
  std::array<int, 6> idx{0, 1, 2, 3, 4, 5};
  do {
    auto g = std::gcd(q[idx[0]] + q[idx[1]], q[idx[2]] + q[idx[3]]);
    if (g != 2) return false;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return true;
}

// Number of (base index, sign) pairs for which every pairwise sum of the
// other five entries has that sign.
int curvature_witnesses(const Six& q) {
  int count = 0;
  for (int i0 = 0; i0 < 6; ++i0)
    for (int sign : {1, -1}) {
      bool ok = true;
      for (int a = 0; a < 6 && ok; ++a)
        for (int b = a + 1; b < 6 && ok; ++b)
          if (a != i0 && b != i0 && sign * (q[a] + q[b]) <= 0) ok = false;
      count += ok;
    }
  return count;
}

}  // namespace

TEST_CASE("pair splits") {
  auto splits = pair_splits();
  CHECK(splits.size() == 45);
  std::set<std::array<int, 4>> seen;
  for (const auto& s : splits) {
    CHECK(s.a < s.b);
    CHECK(s.c < s.d);
    CHECK(s.a < s.c);
    std::set<int> used{s.a, s.b, s.c, s.d};
    CHECK(used.size() == 4);
    seen.insert({s.a, s.b, s.c, s.d});
  }
  CHECK(seen.size() == 45);
  CHECK(splits[0].a == 0);
  CHECK(splits[0].b == 1);
  CHECK(splits[0].c == 2);
  CHECK(splits[0].d == 3);
}

TEST_CASE("freeness examples") {
  CHECK(is_free(qt("1,1,1,1,1")));
  CHECK(is_free(qt("-11,13,45,67,77")));
  CHECK(is_free(qt("-53,-11,25,33,77")));
  auto bad = freeness_failure(canonicalize(RawTuple6({-9, 1, 1, 1, 3, 3})));
  REQUIRE(bad.has_value());
  CHECK(bad->gcd == 4);
  CHECK_FALSE(is_free(qt("1,1,1,3,3")));
}

TEST_CASE("is_free agrees with the permutation definition") {
  auto all = bzk::test::all_canonical_up_to(15);
  int frees = 0;
  for (const auto& q : all) {
    bool f = is_free(q);
    CHECK(f == free_by_permutations(q.values()));
    frees += f;
  }
  CHECK(frees > 0);
  CHECK(frees < static_cast<int>(all.size()));
}

TEST_CASE("positively curved examples") {
  auto berger = positively_curved(qt("1,1,1,1,1"));
  REQUIRE(berger.has_value());
  CHECK(berger->base_index == 0);
  CHECK(berger->orientation == Orientation::Positive);
  CHECK(positively_curved(qt("5,5,5,13,23")).has_value());
  CHECK_FALSE(positively_curved(qt("-89,15,21,31,111")).has_value());
  CHECK_FALSE(positively_curved(qt("-53,-11,25,33,77")).has_value());
  CHECK_THROWS_AS(positively_curved(qt("1,1,1,3,3")), std::invalid_argument);
}

TEST_CASE("canonical shortcut matches the full scan, with at most one witness") {
  auto all = bzk::test::all_canonical_up_to(25);
  int pc = 0;
  for (const auto& q : all) {
    if (!is_free(q)) continue;
    int w = curvature_witnesses(q.values());
    CHECK(w <= 1);
    bool full = positively_curved(q).has_value();
    CHECK(full == (w == 1));
    CHECK(full == positively_curved_canonical(q));
    pc += full;
  }
  CHECK(pc > 0);
}

TEST_CASE("free tuples have the mod-4 pattern +-(1,1,1,1,1,-1)") {
  auto all = bzk::test::all_canonical_up_to(25);
  for (const auto& q : all) {
    if (!is_free(q)) continue;
    int ones = 0;
    for (auto x : q.values()) ones += mod_floor(x, 4) == 1;
    CHECK((ones == 5 || ones == 1));
  }
}

TEST_CASE("bazaikin_original") {
  CHECK(bazaikin_original(qt("1,1,1,1,1")));
  // Positively curved, but 13 and 23 differ mod 4.
  CHECK_FALSE(bazaikin_original(qt("5,5,5,13,23")));
  CHECK_FALSE(bazaikin_original(qt("-89,15,21,31,111")));
  // Positively curved but not all of one sign in any congruent presentation.
  CHECK_FALSE(bazaikin_original(qt("-11,13,45,67,77")));

  auto all = bzk::test::all_canonical_up_to(25);
  for (const auto& q : all) {
    if (!is_free(q)) continue;
    auto flags = admissibility(q);
    CHECK(flags.free);
    auto fast = admissibility_of_free(q);
    CHECK(fast.positively_curved == flags.positively_curved);
    CHECK(fast.pc_witness == flags.pc_witness);
    CHECK(fast.bazaikin_original == flags.bazaikin_original);
    if (flags.bazaikin_original) CHECK(flags.positively_curved);

    // Drop each entry in turn; the rest must agree mod 4 and in sign.
    bool direct = false;
    const auto& v = q.values();
    for (std::size_t i = 0; i < 6; ++i) {
      bool congruent = true, pos = true, neg = true;
      for (std::size_t j = 0; j < 6; ++j) {
        if (j == i) continue;
        std::size_t first = i == 0 ? 1 : 0;
        congruent = congruent && mod_floor(v[j] - v[first], 4) == 0;
        pos = pos && v[j] > 0;
        neg = neg && v[j] < 0;
      }
      direct = direct || (congruent && (pos || neg));
    }
    CHECK(flags.bazaikin_original == direct);
    CHECK(flags.positively_curved == flags.pc_witness.has_value());
  }
  CHECK_THROWS_AS(admissibility(qt("1,1,1,3,3")), std::invalid_argument);
}
