#include "bzk/record.hpp"

namespace bzk {

ManifoldRecord make_record(const QTuple& q) {
  if (!is_free(q)) throw std::invalid_argument("tuple " + format_tuple(q.values()) + " is not free");
  return make_record_of_free(q);
}

ManifoldRecord make_record_of_free(const QTuple& q) {
  return {q, full_record_of_free(q), admissibility_of_free(q)};
}

std::uint8_t flag_byte(const ManifoldRecord& r) {
  std::uint8_t f = 0;
  if (r.flags.positively_curved) f |= flag_bits::kPositivelyCurved;
  if (r.flags.bazaikin_original) f |= flag_bits::kBazaikinOriginal;
  if (r.inv.p1_mod24 == 15) f |= flag_bits::kP1Mod24Is15;
  return f;
}

void put_u64(std::uint8_t* p, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

std::uint64_t get_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

void put_i32(std::uint8_t* p, std::int32_t v) {
  auto u = static_cast<std::uint32_t>(v);
  for (int i = 0; i < 4; ++i) p[i] = static_cast<std::uint8_t>(u >> (8 * i));
}

std::int32_t get_i32(const std::uint8_t* p) {
  std::uint32_t u = 0;
  for (int i = 0; i < 4; ++i) u |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return static_cast<std::int32_t>(u);
}

void encode_record(const ManifoldRecord& r, std::span<std::uint8_t, kRecordBytes> out) {
  std::uint8_t* p = out.data();
  for (std::size_t i = 1; i < 6; ++i, p += 4) put_i32(p, static_cast<std::int32_t>(r.q[i]));
  for (std::uint64_t v : {r.inv.s, r.inv.p1, r.inv.lk, r.inv.p2}) {
    put_u64(p, v);
    p += 8;
  }
  *p = flag_byte(r);
}

ManifoldRecord decode_record(std::span<const std::uint8_t, kRecordBytes> in) {
  const std::uint8_t* p = in.data();
  Six six{};
  std::int64_t sum = 0;
  for (std::size_t i = 1; i < 6; ++i, p += 4) {
    six[i] = get_i32(p);
    sum += six[i];
  }
  six[0] = -sum;
  auto q = as_canonical(six);
  if (!q) throw FormatError("stored tuple " + format_tuple(six) + " is not canonical");
  if (!is_free(*q)) throw FormatError("stored tuple " + format_tuple(six) + " is not free");

  InvariantRecord inv;
  inv.s = get_u64(p);
  inv.p1 = get_u64(p + 8);
  inv.lk = get_u64(p + 16);
  inv.p2 = get_u64(p + 24);
  std::uint8_t f = p[32];
  if (f & ~std::uint8_t{0x7}) throw FormatError("unknown flag bits");

  inv.p1_mod24 = (f & flag_bits::kP1Mod24Is15) ? 15 : 7;
  // The mod-3 class is a function of q alone.
  std::array<int, 3> count{};
  for (auto x : six) ++count[static_cast<std::size_t>(mod_floor(x, 3))];
  if (count[0] == 0)
    inv.mod3 = Mod3Class::AllOnes;
  else if (count[0] == 3)
    inv.mod3 = Mod3Class::ThreeZeros;
  else
    inv.mod3 = Mod3Class::Mixed;

  AdmissibilityFlags flags;
  flags.free = true;
  flags.positively_curved = (f & flag_bits::kPositivelyCurved) != 0;
  if (flags.positively_curved) flags.pc_witness = positively_curved(*q);
  flags.bazaikin_original = (f & flag_bits::kBazaikinOriginal) != 0;
  return {*q, inv, flags};
}

bool verify_record(const ManifoldRecord& r) {
  try {
    ManifoldRecord fresh = make_record(r.q);
    return fresh.inv == r.inv && flag_byte(fresh) == flag_byte(r) &&
           fresh.flags.positively_curved == r.flags.positively_curved;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace bzk
