#include "bzk/invariants.hpp"

#include <algorithm>

#include "bzk/admissibility.hpp"

namespace bzk {

SymmetricProfile symmetric_profile(std::span<const std::int64_t> q) {
  for (auto x : q)
    if (x > kMaxEntry || x < -kMaxEntry)
      throw std::overflow_error("entry " + std::to_string(x) + " outside the 2^20 width contract");

  // Coefficients of prod (x + q_i), built one factor at a time.
  SymmetricProfile p;
  p.sigma[0] = 1;
  std::size_t n = 0;
  for (auto qi : q) {
    ++n;
    for (std::size_t k = n; k >= 1; --k) p.sigma[k] += p.sigma[k - 1] * qi;
  }
  return p;
}

i128 mod_inverse(i128 a, i128 m) {
  if (m < 1) throw std::domain_error("modulus must be positive");
  if (m == 1) return 0;
  i128 r0 = m, r1 = mod_floor(a, m);
  i128 t0 = 0, t1 = 1;
  while (r1 != 0) {
    i128 k = r0 / r1;
    i128 r2 = r0 - k * r1;
    r0 = r1;
    r1 = r2;
    i128 t2 = t0 - k * t1;
    t0 = t1;
    t1 = t2;
  }
  if (r0 != 1) throw NotInvertible(r0);
  return mod_floor(t0, m);
}

namespace {

void require_free(const QTuple& q) {
  if (!is_free(q))
    throw std::invalid_argument("tuple " + format_tuple(q.values()) + " is not free");
}

std::uint64_t s_from(const SymmetricProfile& sp) {
  i128 s3 = abs128(sp[3]);
  if (s3 == 0) throw TheoryViolation("sigma_3 vanishes");
  if (s3 % 8 != 0) throw TheoryViolation("sigma_3 not divisible by 8");
  i128 s = s3 / 8;
  if (s % 2 == 0) throw TheoryViolation("order s is even");
  return static_cast<std::uint64_t>(s);
}

std::uint64_t p1_from(const SymmetricProfile& sp) {
  return static_cast<std::uint64_t>(-sp[2]);
}

std::uint64_t lk_from(const SymmetricProfile& sp, std::uint64_t s) {
  if (s == 1) return 0;
  i128 m = s;
  i128 inv;
  try {
    inv = mod_inverse(sp[5], m);
  } catch (const NotInvertible& e) {
    throw TheoryViolation("sigma_5 not a unit mod s (gcd " + to_string(e.gcd()) + ")");
  }
  i128 x = (32 * inv) % m;
  return static_cast<std::uint64_t>(std::min(x, m - x));
}

std::uint64_t p2_from(const SymmetricProfile& sp, std::uint64_t s) {
  if (s == 1) return 0;
  i128 m = s;
  i128 s2 = mod_floor(sp[2], m);
  i128 rhs = mod_floor(3 * ((s2 * s2) % m) - mod_floor(sp[4], m), m);
  return static_cast<std::uint64_t>((rhs * mod_inverse(8, m)) % m);
}

ResidueClasses residues_from(const QTuple& q, std::uint64_t p1) {
  std::array<int, 3> count{};
  for (auto x : q.values()) ++count[static_cast<std::size_t>(mod_floor(x, 3))];

  // Up to sign, residues 1 and 2 swap; `major` is the more frequent unit.
  int major = std::max(count[1], count[2]);
  int minor = std::min(count[1], count[2]);
  Mod3Class c;
  if (count[0] == 0 && major == 6)
    c = Mod3Class::AllOnes;
  else if (count[0] == 3 && major == 3 && minor == 0)
    c = Mod3Class::ThreeZeros;
  else if (count[0] == 1 && major == 4 && minor == 1)
    c = Mod3Class::Mixed;
  else
    throw TheoryViolation("unclassifiable residue pattern mod 3 for " + format_tuple(q.values()));

  int p1_mod24 = static_cast<int>(p1 % 24);
  int expected = c == Mod3Class::Mixed ? 7 : 15;
  if (p1_mod24 != expected)
    throw TheoryViolation("p1 mod 24 = " + std::to_string(p1_mod24) + " contradicts mod-3 class " +
                          to_string(c));
  return {p1_mod24, c};
}

}  // namespace

std::uint64_t order_s(const QTuple& q) {
  require_free(q);
  return s_from(symmetric_profile(q));
}

std::uint64_t p1(const QTuple& q) { return p1_from(symmetric_profile(q)); }

std::uint64_t linking_form(const QTuple& q) {
  require_free(q);
  auto sp = symmetric_profile(q);
  return lk_from(sp, s_from(sp));
}

std::uint64_t p2(const QTuple& q) {
  require_free(q);
  auto sp = symmetric_profile(q);
  return p2_from(sp, s_from(sp));
}

const char* to_string(Mod3Class c) {
  switch (c) {
    case Mod3Class::AllOnes: return "all-ones";
    case Mod3Class::ThreeZeros: return "three-zeros";
    case Mod3Class::Mixed: return "mixed";
  }
  return "?";
}

ResidueClasses residue_classes(const QTuple& q) {
  require_free(q);
  return residues_from(q, p1(q));
}

InvariantRecord full_record(const QTuple& q) {
  require_free(q);
  return full_record_of_free(q);
}

InvariantRecord full_record_of_free(const QTuple& q) {
  auto sp = symmetric_profile(q);
  InvariantRecord r;
  r.s = s_from(sp);
  r.p1 = p1_from(sp);
  r.lk = lk_from(sp, r.s);
  r.p2 = p2_from(sp, r.s);
  auto rc = residues_from(q, r.p1);
  r.p1_mod24 = rc.p1_mod24;
  r.mod3 = rc.mod3;
  return r;
}

}  // namespace bzk
