#pragma once

// ManifoldRecord: one free tuple with its invariants and flags, plus the
// fixed-width little-endian encoding shared by record files and
// enumeration checkpoints.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>

#include "bzk/admissibility.hpp"
#include "bzk/invariants.hpp"
#include "bzk/tuples.hpp"

namespace bzk {

struct ManifoldRecord {
  QTuple q;
  InvariantRecord inv;
  AdmissibilityFlags flags;
};

/// Throws std::invalid_argument for a non-free tuple.
ManifoldRecord make_record(const QTuple& q);

/// make_record for a tuple already known to be free.
ManifoldRecord make_record_of_free(const QTuple& q);

/// Enumeration order: s first, then the canonical six-tuple.
inline bool record_less(const ManifoldRecord& a, const ManifoldRecord& b) {
  if (a.inv.s != b.inv.s) return a.inv.s < b.inv.s;
  return a.q < b.q;
}

inline constexpr std::size_t kRecordBytes = 5 * 4 + 4 * 8 + 1;

namespace flag_bits {
inline constexpr std::uint8_t kPositivelyCurved = 1u << 0;
inline constexpr std::uint8_t kBazaikinOriginal = 1u << 1;
inline constexpr std::uint8_t kP1Mod24Is15 = 1u << 2;
}  // namespace flag_bits

/// Malformed or inconsistent encoded data.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint8_t flag_byte(const ManifoldRecord& r);

void encode_record(const ManifoldRecord& r, std::span<std::uint8_t, kRecordBytes> out);

/// Rebuilds q_0 from the stored q_1..q_5 and takes s, p1, lk, p2 and the
/// flag byte as stored. The derived fields (p1 mod 24, mod-3 class,
/// curvature witness) are recomputed from q. Stored values are *not*
/// cross-checked against q here; see verify_record.
ManifoldRecord decode_record(std::span<const std::uint8_t, kRecordBytes> in);

/// True iff the stored fields agree with a fresh computation from q.
bool verify_record(const ManifoldRecord& r);

// Little-endian primitives.
void put_u64(std::uint8_t* p, std::uint64_t v);
std::uint64_t get_u64(const std::uint8_t* p);
void put_i32(std::uint8_t* p, std::int32_t v);
std::int32_t get_i32(const std::uint8_t* p);

}  // namespace bzk
