#include "bzk/tuples.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <span>

#include "bzk/integer.hpp"

namespace bzk {

namespace {

bool is_odd(std::int64_t x) { return (x & 1) != 0; }

void check_entries(std::span<const std::int64_t> q) {
  for (auto x : q) {
    if (!is_odd(x))
      throw TupleError("entry " + std::to_string(x) + " is even");
    if (x > kMaxEntry || x < -kMaxEntry)
      throw TupleError("entry " + std::to_string(x) + " exceeds 2^20 in magnitude");
  }
}

Six negated_sorted(const Six& sorted) {
  Six n;
  for (std::size_t i = 0; i < 6; ++i) n[i] = -sorted[5 - i];
  return n;
}

bool sign_normalized(const Six& s) { return (s[2] < 0 ? -s[2] : s[2]) <= s[3]; }

}  // namespace

RawTuple6::RawTuple6(const Six& q) : q_(q) {
  check_entries(q_);
  if (std::accumulate(q_.begin(), q_.end(), std::int64_t{0}) != 0)
    throw TupleError("six-integer form must sum to zero");
}

RawTuple5::RawTuple5(const Five& q) : q_(q) {
  check_entries(q_);
  // The implied q_0 must also be in range.
  std::int64_t sum = std::accumulate(q_.begin(), q_.end(), std::int64_t{0});
  if (sum > kMaxEntry || sum < -kMaxEntry)
    throw TupleError("implied sixth entry " + std::to_string(-sum) +
                     " exceeds 2^20 in magnitude");
}

std::int64_t QTuple::max_abs() const {
  return std::max(-q_[0], q_[5]);
}

RawTuple6 from_qbar(const RawTuple5& qbar) {
  const auto& v = qbar.values();
  std::int64_t sum = std::accumulate(v.begin(), v.end(), std::int64_t{0});
  return RawTuple6({-sum, v[0], v[1], v[2], v[3], v[4]});
}

QTuple canonicalize(const RawTuple6& q) {
  Six s = q.values();
  std::sort(s.begin(), s.end());
  Six n = negated_sorted(s);
  bool s_ok = sign_normalized(s);
  bool n_ok = sign_normalized(n);
  if (s_ok && n_ok) return QTuple(std::min(s, n));
  return QTuple(s_ok ? s : n);
}

std::optional<QTuple> as_canonical(const Six& q) {
  for (std::size_t i = 0; i + 1 < 6; ++i)
    if (q[i] > q[i + 1]) return std::nullopt;
  if (!sign_normalized(q)) return std::nullopt;
  if (q[2] == -q[3] && negated_sorted(q) < q) return std::nullopt;
  for (auto x : q)
    if (!is_odd(x)) return std::nullopt;
  if (std::accumulate(q.begin(), q.end(), std::int64_t{0}) != 0) return std::nullopt;
  return QTuple(q);
}

std::vector<Presentation> presentations(const QTuple& q) {
  std::vector<Presentation> out;
  out.reserve(6);
  const Six& v = q.values();
  for (int i = 0; i < 6; ++i) {
    Five rest{};
    std::size_t k = 0;
    for (int j = 0; j < 6; ++j)
      if (j != i) rest[k++] = v[j];
    // v is ascending, so rest already is.
    out.push_back({i, v[i], RawTuple5(rest)});
  }
  return out;
}

std::optional<BazaikinPrimeTuple> to_bazaikin_prime(const Presentation& p) {
  const auto& v = p.qbar.values();
  auto residue = [](std::int64_t x) { return static_cast<int>(mod_floor(x, 4)); };
  int r = residue(v[0]);
  for (auto x : v)
    if (residue(x) != r) return std::nullopt;

  BazaikinPrimeTuple out{};
  for (std::size_t i = 0; i < 5; ++i) {
    std::int64_t num = v[i] + p.removed;
    if (num % 4 != 0)
      throw std::logic_error("congruent presentation with q_i + q_0 not divisible by 4");
    out.q[i] = num / 4;
  }
  return out;
}

RawTuple6 parse_tuple(std::string_view text) {
  std::string buf;
  buf.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    // U+2212 MINUS SIGN
    if (text.compare(i, 3, "\xE2\x88\x92") == 0) {
      buf.push_back('-');
      i += 2;
      continue;
    }
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '(' || c == ')' || c == '[' || c == ']') continue;
    buf.push_back(c);
  }

  std::vector<std::int64_t> entries;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = buf.find(',', pos);
    std::string_view field(buf.data() + pos,
                           (comma == std::string::npos ? buf.size() : comma) - pos);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    std::int64_t value = 0;
    auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc{} || end != field.data() + field.size())
      throw TupleError("cannot parse '" + std::string(field) + "' as an integer");
    entries.push_back(value);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }

  if (entries.size() == 5) {
    Five f;
    std::copy(entries.begin(), entries.end(), f.begin());
    return from_qbar(RawTuple5(f));
  }
  if (entries.size() == 6) {
    Six s;
    std::copy(entries.begin(), entries.end(), s.begin());
    return RawTuple6(s);
  }
  throw TupleError("expected 5 or 6 comma-separated integers, got " +
                   std::to_string(entries.size()));
}

namespace {
template <std::size_t N>
std::string join(const std::array<std::int64_t, N>& q) {
  std::string out = "(";
  for (std::size_t i = 0; i < N; ++i) {
    if (i) out += ',';
    out += std::to_string(q[i]);
  }
  return out + ")";
}
}  // namespace

std::string format_tuple(const Six& q) { return join(q); }
std::string format_tuple(const Five& q) { return join(q); }

}  // namespace bzk
