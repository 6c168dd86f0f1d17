#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "bzk/enumerate.hpp"
#include "bzk/record_file.hpp"
#include "support.hpp"

using namespace bzk;
using bzk::test::qt;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "bzk_test_record_file";
  fs::create_directories(dir);
  auto p = dir / name;
  fs::remove(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const fs::path& p, const std::string& data) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << data;
}

std::vector<ManifoldRecord> sample(EnumMode mode) {
  EnumConfig cfg;
  cfg.mode = mode;
  cfg.threads = 1;
  return enumerate(cfg);
}

}  // namespace

TEST_CASE("record encoding round trip") {
  for (const auto& r : sample(EnumMode::general(2000))) {
    std::array<std::uint8_t, kRecordBytes> buf{};
    encode_record(r, buf);
    auto back = decode_record(buf);
    CHECK(back.q == r.q);
    CHECK(back.inv == r.inv);
    CHECK(back.flags.positively_curved == r.flags.positively_curved);
    CHECK(back.flags.bazaikin_original == r.flags.bazaikin_original);
    CHECK(back.flags.pc_witness == r.flags.pc_witness);
    CHECK(verify_record(back));
  }
}

TEST_CASE("record layout") {
  auto r = make_record(qt("1,1,1,1,1"));
  std::array<std::uint8_t, kRecordBytes> buf{};
  encode_record(r, buf);
  for (int i = 0; i < 5; ++i) CHECK(get_i32(buf.data() + 4 * i) == 1);
  CHECK(get_u64(buf.data() + 20) == 5);
  CHECK(get_u64(buf.data() + 28) == 15);
  CHECK(get_u64(buf.data() + 36) == 2);
  CHECK(get_u64(buf.data() + 44) == 0);
  CHECK(buf[52] == (flag_bits::kPositivelyCurved | flag_bits::kBazaikinOriginal | flag_bits::kP1Mod24Is15));

  auto bad = buf;
  bad[52] |= 0x80;
  CHECK_THROWS_AS(decode_record(bad), FormatError);
  bad = buf;
  put_i32(bad.data(), 2);
  CHECK_THROWS_AS(decode_record(bad), FormatError);

  // Stored invariants that disagree with q decode but fail verification.
  bad = buf;
  put_u64(bad.data() + 20, 7);
  CHECK_FALSE(verify_record(decode_record(bad)));
}

TEST_CASE("binary and csv convert into each other byte for byte") {
  for (auto mode : {EnumMode::positively_curved(30000), EnumMode::general(1500)}) {
    auto recs = sample(mode);
    auto bin = scratch("a.bin"), csv = scratch("a.csv"), bin2 = scratch("b.bin"), csv2 = scratch("b.csv");
    write_record_file(bin, FileFormat::Binary, mode, recs);
    CHECK(fs::file_size(bin) == kHeaderBytes + recs.size() * kRecordBytes);
    CHECK_FALSE(fs::exists(bin.string() + ".tmp"));

    auto loaded = read_record_file(bin);
    CHECK(loaded.header.mode.kind == mode.kind);
    CHECK(loaded.header.mode.bound == mode.bound);
    CHECK(loaded.header.count == recs.size());
    write_record_file(csv, FileFormat::Csv, loaded.header.mode, loaded.records);

    auto from_csv = read_record_file(csv);
    CHECK(from_csv.header.count == recs.size());
    write_record_file(bin2, FileFormat::Binary, from_csv.header.mode, from_csv.records);
    write_record_file(csv2, FileFormat::Csv, from_csv.header.mode, from_csv.records);
    CHECK(slurp(bin) == slurp(bin2));
    CHECK(slurp(csv) == slurp(csv2));
  }
}

TEST_CASE("csv layout") {
  std::vector<ManifoldRecord> recs{make_record(qt("1,1,1,1,1"))};
  std::ostringstream out;
  write_records(out, FileFormat::Csv, EnumMode::positively_curved(5), recs);
  CHECK(out.str() ==
        "# BZK1 version=1 mode=pc bound=5 records=1\n"
        "q1,q2,q3,q4,q5,s,p1,lk,p2,p1_mod24,pc,bazaikin_original\n"
        "1,1,1,1,1,5,15,2,0,15,1,1\n");
}

TEST_CASE("damaged files are refused") {
  auto recs = sample(EnumMode::positively_curved(5000));
  auto mode = EnumMode::positively_curved(5000);
  auto bin = scratch("good.bin"), csv = scratch("good.csv"), bad = scratch("bad.bin");
  write_record_file(bin, FileFormat::Binary, mode, recs);
  write_record_file(csv, FileFormat::Csv, mode, recs);
  const auto good = slurp(bin);
  const auto good_csv = slurp(csv);

  SUBCASE("truncated body") {
    spit(bad, good.substr(0, good.size() - 10));
    CHECK_THROWS_AS(read_record_file(bad), FormatError);
  }
  SUBCASE("truncated header") {
    spit(bad, good.substr(0, 10));
    CHECK_THROWS_AS(read_record_file(bad), FormatError);
  }
  SUBCASE("trailing data") {
    spit(bad, good + "x");
    CHECK_THROWS_AS(read_record_file(bad), FormatError);
  }
  SUBCASE("unknown version") {
    auto v = good;
    v[4] = 2;
    spit(bad, v);
    CHECK_THROWS_AS(read_record_file(bad), FormatError);
  }
  SUBCASE("bad magic") {
    auto v = good;
    v[0] = 'X';
    spit(bad, v);
    CHECK_THROWS_AS(read_record_file(bad), FormatError);
  }
  SUBCASE("csv with a missing row") {
    auto last = good_csv.rfind('\n', good_csv.size() - 2);
    spit(bad, good_csv.substr(0, last + 1));
    CHECK_THROWS_AS(read_record_file(bad), FormatError);
  }
  SUBCASE("csv with a garbled row") {
    auto v = good_csv;
    auto pos = v.rfind('\n', v.size() - 2);
    v.replace(pos + 1, 1, "z");
    spit(bad, v);
    CHECK_THROWS_AS(read_record_file(bad), FormatError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS(read_record_file(scratch("nope.bin")));
  }
}

TEST_CASE("streaming reader") {
  auto mode = EnumMode::general(1000);
  auto recs = sample(mode);
  auto bin = scratch("stream.bin");
  write_record_file(bin, FileFormat::Binary, mode, recs);
  RecordReader reader(bin);
  CHECK(reader.format() == FileFormat::Binary);
  std::size_t n = 0;
  while (auto r = reader.next()) {
    REQUIRE(n < recs.size());
    CHECK(r->q == recs[n].q);
    ++n;
  }
  CHECK(n == recs.size());
  CHECK(mode_name(Mode::PositivelyCurved) == "pc");
  CHECK(mode_name(Mode::General) == "general");
}
