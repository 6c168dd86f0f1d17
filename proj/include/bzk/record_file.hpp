#pragma once

// Record files.
//
// Binary layout (little-endian):
//   header, 24 bytes: "BZK1", u16 version, u8 mode (1 = pc, 2 = general),
//                     u8 reserved (0), u64 bound, u64 record count
//   body:   count x 53-byte records: q1..q5 as i32, s, p1, lk, p2 as u64,
//           one flag byte (bit 0 pc, bit 1 bazaikin_original,
//           bit 2 p1 mod 24 == 15)
//
// CSV layout:
//   # BZK1 version=1 mode=pc bound=<n> records=<n>
//   q1,q2,q3,q4,q5,s,p1,lk,p2,p1_mod24,pc,bazaikin_original
//   one row per record, 0/1 for the two booleans
//
// Both carry the same information; converting one into the other and back
// is byte-exact.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bzk/enumerate.hpp"
#include "bzk/record.hpp"

namespace bzk {

inline constexpr std::uint16_t kFormatVersion = 1;
inline constexpr std::size_t kHeaderBytes = 24;

enum class FileFormat { Binary, Csv };

struct RecordFileHeader {
  EnumMode mode;
  std::uint64_t count = 0;
};

void write_records(std::ostream& out, FileFormat format, const EnumMode& mode,
                   std::span<const ManifoldRecord> records);

/// Writes to `<path>.tmp` and renames into place.
void write_record_file(const std::filesystem::path& path, FileFormat format, const EnumMode& mode,
                       std::span<const ManifoldRecord> records);

/// Sequential reader for either format (detected from the first bytes).
/// Throws FormatError on a bad header, an unsupported version, a short
/// body, trailing data, or an invalid record.
class RecordReader {
 public:
  explicit RecordReader(const std::filesystem::path& path);

  const RecordFileHeader& header() const { return header_; }
  FileFormat format() const { return format_; }

  /// Next record, or nothing after the last one.
  std::optional<ManifoldRecord> next();

 private:
  std::ifstream in_;
  RecordFileHeader header_;
  FileFormat format_ = FileFormat::Binary;
  std::uint64_t read_ = 0;
  std::filesystem::path path_;
};

struct RecordFile {
  RecordFileHeader header;
  std::vector<ManifoldRecord> records;
};

RecordFile read_record_file(const std::filesystem::path& path);

std::string mode_name(Mode m);

}  // namespace bzk
