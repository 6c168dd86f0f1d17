#include "bzk/record_file.hpp"

#include <array>
#include <charconv>
#include <sstream>

namespace bzk {

namespace {

constexpr char kMagic[4] = {'B', 'Z', 'K', '1'};
constexpr std::string_view kCsvColumns = "q1,q2,q3,q4,q5,s,p1,lk,p2,p1_mod24,pc,bazaikin_original";

Mode parse_mode_byte(std::uint8_t b) {
  if (b == static_cast<std::uint8_t>(Mode::PositivelyCurved)) return Mode::PositivelyCurved;
  if (b == static_cast<std::uint8_t>(Mode::General)) return Mode::General;
  throw FormatError("unknown mode byte " + std::to_string(b));
}

template <typename T>
T parse_number(std::string_view field, const char* what) {
  T v{};
  auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc{} || end != field.data() + field.size())
    throw FormatError(std::string("bad ") + what + " field '" + std::string(field) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t at = line.find(sep, pos);
    out.push_back(line.substr(pos, at == std::string_view::npos ? std::string_view::npos : at - pos));
    if (at == std::string_view::npos) return out;
    pos = at + 1;
  }
}

}  // namespace

std::string mode_name(Mode m) { return m == Mode::PositivelyCurved ? "pc" : "general"; }

void write_records(std::ostream& out, FileFormat format, const EnumMode& mode,
                   std::span<const ManifoldRecord> records) {
  if (format == FileFormat::Binary) {
    std::array<std::uint8_t, kHeaderBytes> h{};
    std::copy(std::begin(kMagic), std::end(kMagic), h.begin());
    h[4] = static_cast<std::uint8_t>(kFormatVersion & 0xff);
    h[5] = static_cast<std::uint8_t>(kFormatVersion >> 8);
    h[6] = static_cast<std::uint8_t>(mode.kind);
    h[7] = 0;
    put_u64(h.data() + 8, mode.bound);
    put_u64(h.data() + 16, records.size());
    out.write(reinterpret_cast<const char*>(h.data()), h.size());
    std::array<std::uint8_t, kRecordBytes> buf{};
    for (const auto& r : records) {
      encode_record(r, buf);
      out.write(reinterpret_cast<const char*>(buf.data()), buf.size());
    }
    return;
  }
  out << "# BZK1 version=" << kFormatVersion << " mode=" << mode_name(mode.kind) << " bound=" << mode.bound
      << " records=" << records.size() << '\n';
  out << kCsvColumns << '\n';
  for (const auto& r : records) {
    for (std::size_t i = 1; i < 6; ++i) out << r.q[i] << ',';
    out << r.inv.s << ',' << r.inv.p1 << ',' << r.inv.lk << ',' << r.inv.p2 << ',' << r.inv.p1_mod24 << ','
        << (r.flags.positively_curved ? 1 : 0) << ',' << (r.flags.bazaikin_original ? 1 : 0) << '\n';
  }
}

void write_record_file(const std::filesystem::path& path, FileFormat format, const EnumMode& mode,
                       std::span<const ManifoldRecord> records) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    write_records(out, format, mode, records);
    out.flush();
    if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

RecordReader::RecordReader(const std::filesystem::path& path) : in_(path, std::ios::binary), path_(path) {
  if (!in_) throw FormatError("cannot open " + path.string());
  std::array<char, 4> magic{};
  in_.read(magic.data(), 4);
  if (in_.gcount() == 4 && std::equal(magic.begin(), magic.end(), std::begin(kMagic))) {
    format_ = FileFormat::Binary;
    std::array<std::uint8_t, kHeaderBytes - 4> rest{};
    in_.read(reinterpret_cast<char*>(rest.data()), rest.size());
    if (in_.gcount() != static_cast<std::streamsize>(rest.size())) throw FormatError("truncated header");
    std::uint16_t version = static_cast<std::uint16_t>(rest[0] | (rest[1] << 8));
    if (version != kFormatVersion) throw FormatError("unsupported format version " + std::to_string(version));
    header_.mode.kind = parse_mode_byte(rest[2]);
    if (rest[3] != 0) throw FormatError("nonzero reserved header byte");
    header_.mode.bound = get_u64(rest.data() + 4);
    header_.count = get_u64(rest.data() + 12);
    return;
  }

  in_.clear();
  in_.seekg(0);
  std::string line;
  if (!std::getline(in_, line) || line.rfind("# BZK1 ", 0) != 0)
    throw FormatError(path.string() + " is not a record file");
  format_ = FileFormat::Csv;
  std::optional<std::uint64_t> version, bound, count;
  std::optional<Mode> mode;
  for (auto field : split(std::string_view(line).substr(7), ' ')) {
    auto eq = field.find('=');
    if (eq == std::string_view::npos) throw FormatError("bad CSV header field '" + std::string(field) + "'");
    auto name = field.substr(0, eq);
    auto value = field.substr(eq + 1);
    if (name == "version")
      version = parse_number<std::uint64_t>(value, "version");
    else if (name == "mode") {
      if (value == "pc")
        mode = Mode::PositivelyCurved;
      else if (value == "general")
        mode = Mode::General;
      else
        throw FormatError("unknown mode '" + std::string(value) + "'");
    } else if (name == "bound")
      bound = parse_number<std::uint64_t>(value, "bound");
    else if (name == "records")
      count = parse_number<std::uint64_t>(value, "records");
    else
      throw FormatError("unknown CSV header field '" + std::string(name) + "'");
  }
  if (!version || !mode || !bound || !count) throw FormatError("incomplete CSV header");
  if (*version != kFormatVersion) throw FormatError("unsupported format version " + std::to_string(*version));
  header_.mode = {*mode, *bound};
  header_.count = *count;
  if (!std::getline(in_, line) || line != kCsvColumns) throw FormatError("unexpected CSV column line");
}

std::optional<ManifoldRecord> RecordReader::next() {
  std::array<std::uint8_t, kRecordBytes> buf{};
  if (read_ == header_.count) {
    if (format_ == FileFormat::Binary) {
      if (in_.peek() != std::char_traits<char>::eof()) throw FormatError("trailing data after last record");
    } else {
      std::string line;
      while (std::getline(in_, line))
        if (!line.empty()) throw FormatError("more CSV rows than the header count");
    }
    return std::nullopt;
  }

  if (format_ == FileFormat::Binary) {
    in_.read(reinterpret_cast<char*>(buf.data()), buf.size());
    if (in_.gcount() != static_cast<std::streamsize>(buf.size()))
      throw FormatError("truncated file: header promises " + std::to_string(header_.count) + " records, found " +
                        std::to_string(read_));
  } else {
    std::string line;
    if (!std::getline(in_, line))
      throw FormatError("truncated file: header promises " + std::to_string(header_.count) + " records, found " +
                        std::to_string(read_));
    auto f = split(line, ',');
    if (f.size() != 12) throw FormatError("CSV row with " + std::to_string(f.size()) + " fields");
    std::uint8_t* p = buf.data();
    for (std::size_t i = 0; i < 5; ++i, p += 4) put_i32(p, parse_number<std::int32_t>(f[i], "q"));
    for (std::size_t i = 5; i < 9; ++i, p += 8) put_u64(p, parse_number<std::uint64_t>(f[i], "invariant"));
    int m24 = parse_number<int>(f[9], "p1_mod24");
    int pc = parse_number<int>(f[10], "pc");
    int ba = parse_number<int>(f[11], "bazaikin_original");
    if ((m24 != 7 && m24 != 15) || (pc != 0 && pc != 1) || (ba != 0 && ba != 1))
      throw FormatError("bad flag fields in CSV row '" + line + "'");
    *p = static_cast<std::uint8_t>((pc ? flag_bits::kPositivelyCurved : 0) |
                                   (ba ? flag_bits::kBazaikinOriginal : 0) |
                                   (m24 == 15 ? flag_bits::kP1Mod24Is15 : 0));
  }
  ++read_;
  return decode_record(buf);
}

RecordFile read_record_file(const std::filesystem::path& path) {
  RecordReader reader(path);
  RecordFile f{reader.header(), {}};
  f.records.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(reader.header().count, 1u << 24)));
  while (auto r = reader.next()) f.records.push_back(std::move(*r));
  return f;
}

}  // namespace bzk
