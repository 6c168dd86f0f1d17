#pragma once

// Closed-form topological invariants of a Bazaikin space:
//   8s = |sigma_3|,  p_1 = -sigma_2,  lk = +-32 sigma_5^{-1} in Z_s,
//   8 p_2 = 3 sigma_2^2 - sigma_4 in Z_s.

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>

#include "bzk/integer.hpp"
#include "bzk/tuples.hpp"

namespace bzk {

/// sigma[i] is the degree-i elementary symmetric polynomial, sigma[0] = 1.
struct SymmetricProfile {
  std::array<i128, 7> sigma{};

  i128 operator[](std::size_t i) const { return sigma[i]; }
};

SymmetricProfile symmetric_profile(std::span<const std::int64_t> q);
inline SymmetricProfile symmetric_profile(const QTuple& q) {
  return symmetric_profile(q.values());
}

class NotInvertible : public std::domain_error {
 public:
  explicit NotInvertible(i128 gcd)
      : std::domain_error("not invertible: gcd = " + to_string(gcd)), gcd_(gcd) {}
  i128 gcd() const { return gcd_; }

 private:
  i128 gcd_;
};

/// Inverse of a modulo m in [0, m). m == 1 gives 0.
i128 mod_inverse(i128 a, i128 m);

/// Raised when a tuple violates one of the arithmetic facts every free
/// tuple must satisfy (8 | sigma_3, s odd, residue pattern, ...).
class TheoryViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

std::uint64_t order_s(const QTuple& q);
std::uint64_t p1(const QTuple& q);
std::uint64_t linking_form(const QTuple& q);
std::uint64_t p2(const QTuple& q);

enum class Mod3Class : std::uint8_t { AllOnes, ThreeZeros, Mixed };

const char* to_string(Mod3Class c);

struct ResidueClasses {
  int p1_mod24;
  Mod3Class mod3;
};

ResidueClasses residue_classes(const QTuple& q);

struct InvariantRecord {
  std::uint64_t s = 0;
  std::uint64_t p1 = 0;
  std::uint64_t lk = 0;
  std::uint64_t p2 = 0;
  int p1_mod24 = 0;
  Mod3Class mod3 = Mod3Class::AllOnes;

  friend bool operator==(const InvariantRecord&, const InvariantRecord&) = default;
};

/// All invariants at once, sharing one symmetric profile. Requires a free
/// tuple.
InvariantRecord full_record(const QTuple& q);

/// full_record without the freeness check; the caller has already run it.
InvariantRecord full_record_of_free(const QTuple& q);

}  // namespace bzk
