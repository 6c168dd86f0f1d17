#pragma once

// Parameter tuples of a Bazaikin space.
//
// A space is fixed by six odd integers q_0..q_5 with zero sum, up to
// reordering and a global sign. Five-integer forms drop one coordinate;
// the dropped one is recovered as the negative sum of the rest.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bzk {

/// Malformed tuple input (even entry, nonzero sum, wrong arity, range).
class TupleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Six = std::array<std::int64_t, 6>;
using Five = std::array<std::int64_t, 5>;

/// Six odd integers summing to zero, in arbitrary order.
class RawTuple6 {
 public:
  /// Throws TupleError unless every entry is odd, the sum is zero and
  /// every |q_i| is within kMaxEntry.
  explicit RawTuple6(const Six& q);

  const Six& values() const { return q_; }
  std::int64_t operator[](std::size_t i) const { return q_[i]; }

 private:
  Six q_;
};

/// Five odd integers; the sixth is implied.
class RawTuple5 {
 public:
  explicit RawTuple5(const Five& q);

  const Five& values() const { return q_; }
  std::int64_t operator[](std::size_t i) const { return q_[i]; }

 private:
  Five q_;
};

/// Canonical representative of an equivalence class: ascending order and
/// |q_2| <= q_3. When both q and -q qualify (q_2 == -q_3) the
/// lexicographically smaller one is kept.
class QTuple {
 public:
  const Six& values() const { return q_; }
  std::int64_t operator[](std::size_t i) const { return q_[i]; }

  /// q_1..q_5, the customary five-integer name of the space.
  Five qbar() const { return {q_[1], q_[2], q_[3], q_[4], q_[5]}; }

  std::int64_t max_abs() const;

  friend bool operator==(const QTuple&, const QTuple&) = default;
  friend auto operator<=>(const QTuple&, const QTuple&) = default;

 private:
  explicit QTuple(const Six& q) : q_(q) {}
  friend QTuple canonicalize(const RawTuple6& q);
  friend std::optional<QTuple> as_canonical(const Six& q);

  Six q_;
};

/// One of the six five-integer descriptions: coordinate `base_index` of
/// the canonical tuple removed, remaining entries ascending.
struct Presentation {
  int base_index;
  std::int64_t removed;
  RawTuple5 qbar;
};

/// q'_i = (q_i + q_0) / 4 for a presentation whose entries are all
/// congruent to the same unit mod 4.
struct BazaikinPrimeTuple {
  Five q;
};

/// (q_1..q_5) -> (-sum, q_1..q_5).
RawTuple6 from_qbar(const RawTuple5& qbar);

QTuple canonicalize(const RawTuple6& q);

/// Returns the tuple as a QTuple if it is already the canonical
/// representative of its class, otherwise nothing. Used by the scanners,
/// which generate ordered tuples directly and must not pay for a sort.
std::optional<QTuple> as_canonical(const Six& q);

std::vector<Presentation> presentations(const QTuple& q);

/// Throws std::logic_error if the congruence holds but 4 does not divide
/// q_i + q_0.
std::optional<BazaikinPrimeTuple> to_bazaikin_prime(const Presentation& p);

/// Parses "a,b,c,d,e" or "a,b,c,d,e,f" (optional parentheses, spaces,
/// and the Unicode minus sign). Five entries are read as a five-integer
/// form.
RawTuple6 parse_tuple(std::string_view text);

std::string format_tuple(const Six& q);
std::string format_tuple(const Five& q);

}  // namespace bzk
