#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>

#include "bzk/collide.hpp"
#include "bzk/enumerate.hpp"
#include "bzk/record_file.hpp"
#include "bzk/stats.hpp"

namespace bzk::cli {

namespace fs = std::filesystem;

namespace {

FileFormat parse_format(const std::string& s) {
  if (s == "bin") return FileFormat::Binary;
  if (s == "csv") return FileFormat::Csv;
  throw std::invalid_argument("unknown format '" + s + "' (bin or csv)");
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------- invariants / check

int cmd_invariants(const std::string& text, bool full, std::ostream& out) {
  QTuple q = canonicalize(parse_tuple(text));
  out << "canonical: " << format_tuple(q.values()) << '\n';
  out << "qbar: " << format_tuple(q.qbar()) << '\n';
  if (auto fail = freeness_failure(q)) {
    const auto& sp = fail->split;
    out << "free: no\n";
    out << "not free: gcd(q" << sp.a << "+q" << sp.b << ", q" << sp.c << "+q" << sp.d << ")=" << fail->gcd << '\n';
    return kNotFree;
  }
  out << "free: yes\n";
  ManifoldRecord r = make_record_of_free(q);
  if (full) {
    out << "s: " << r.inv.s << '\n';
    out << "p1: " << r.inv.p1 << '\n';
    out << "lk: " << r.inv.lk << '\n';
    out << "p2: " << r.inv.p2 << '\n';
    out << "p1_mod24: " << r.inv.p1_mod24 << '\n';
    out << "mod3_class: " << to_string(r.inv.mod3) << '\n';
    auto sp = symmetric_profile(q);
    out << "sigma1..6:";
    for (std::size_t i = 1; i <= 6; ++i) out << ' ' << to_string(sp[i]);
    out << '\n';
  }
  out << "positively_curved: " << yes_no(r.flags.positively_curved);
  if (r.flags.pc_witness)
    out << " (base index " << r.flags.pc_witness->base_index << ", "
        << (r.flags.pc_witness->orientation == Orientation::Positive ? "positive" : "negative") << ")";
  out << '\n';
  out << "bazaikin_original: " << yes_no(r.flags.bazaikin_original) << '\n';
  return kOk;
}

// ---------------------------------------------------------------- enumerate

struct EnumerateArgs {
  bool pc = false;
  bool general = false;
  std::optional<std::uint64_t> max_s;
  std::optional<std::uint64_t> max_p1;
  std::string out;
  std::string format = "bin";
  unsigned shards = 1;
  std::optional<unsigned> shard;
  bool resume = false;
  unsigned threads = 0;
  bool progress = false;
  std::string pruning = "tight";
};

EnumMode mode_from(bool pc, bool general, const std::optional<std::uint64_t>& max_s,
                   const std::optional<std::uint64_t>& max_p1) {
  if (pc == general) throw std::invalid_argument("choose exactly one of --pc and --general");
  if (pc) {
    if (!max_s || max_p1) throw std::invalid_argument("--pc takes --max-s");
    return EnumMode::positively_curved(*max_s);
  }
  if (!max_p1 || max_s) throw std::invalid_argument("--general takes --max-p1");
  return EnumMode::general(*max_p1);
}

int cmd_enumerate(const EnumerateArgs& a, std::ostream& out, std::ostream& err) {
  EnumMode mode = mode_from(a.pc, a.general, a.max_s, a.max_p1);
  FileFormat format = parse_format(a.format);
  if (a.shards == 0) throw std::invalid_argument("--shards must be positive");
  if (a.shard && *a.shard >= a.shards) throw std::invalid_argument("--shard must be below --shards");
  Pruning pruning;
  if (a.pruning == "tight")
    pruning = Pruning::Tight;
  else if (a.pruning == "loose")
    pruning = Pruning::Loose;
  else
    throw std::invalid_argument("--pruning is tight or loose");

  fs::path path = a.out;
  if (fs::exists(path) && !a.resume) {
    err << "error: " << path.string() << " exists; pass --resume to continue or rerun\n";
    return kUsage;
  }

  std::vector<unsigned> todo;
  if (a.shard)
    todo.push_back(*a.shard);
  else
    for (unsigned i = 0; i < a.shards; ++i) todo.push_back(i);

  std::vector<std::vector<ManifoldRecord>> parts;
  std::vector<fs::path> checkpoints;
  for (unsigned i : todo) {
    EnumConfig cfg;
    cfg.mode = mode;
    cfg.shard = {i, a.shards};
    cfg.threads = a.threads;
    cfg.pruning = pruning;
    cfg.checkpoint = path;
    cfg.checkpoint += todo.size() > 1 ? ".shard" + std::to_string(i) + ".ckpt" : std::string(".ckpt");
    if (!a.resume && fs::exists(cfg.checkpoint)) fs::remove(cfg.checkpoint);
    if (a.progress)
      cfg.progress = [&err, i](const EnumProgress& p) {
        err << "shard " << i << ": q5=" << p.outer_value << " done " << p.outer_done << '/' << p.outer_total
            << ", " << p.records << " records, "
            << (p.seconds > 0 ? static_cast<double>(p.records) / p.seconds : 0.0) << " records/s\n";
      };
    parts.push_back(enumerate(cfg));
    checkpoints.push_back(cfg.checkpoint);
  }
  auto records = merge_sorted(std::move(parts));
  write_record_file(path, format, mode, records);
  for (const auto& c : checkpoints) fs::remove(c);
  out << "wrote " << records.size() << " records to " << path.string() << '\n';
  return kOk;
}

// ---------------------------------------------------------------- merge / convert

int cmd_merge(const std::vector<std::string>& inputs, const std::string& out_path, const std::string& fmt,
              std::ostream& out, std::ostream& err) {
  if (inputs.empty()) throw std::invalid_argument("merge needs input files");
  if (fs::exists(out_path)) {
    err << "error: " << out_path << " exists\n";
    return kUsage;
  }
  std::optional<EnumMode> mode;
  std::vector<std::vector<ManifoldRecord>> parts;
  for (const auto& in : inputs) {
    auto f = read_record_file(in);
    if (mode && (mode->kind != f.header.mode.kind || mode->bound != f.header.mode.bound))
      throw FormatError(in + " was enumerated with a different mode or bound");
    mode = f.header.mode;
    parts.push_back(std::move(f.records));
  }
  auto records = merge_sorted(std::move(parts));
  for (std::size_t i = 1; i < records.size(); ++i)
    if (records[i].q == records[i - 1].q)
      throw FormatError("inputs overlap at " + format_tuple(records[i].q.values()));
  write_record_file(out_path, parse_format(fmt), *mode, records);
  out << "wrote " << records.size() << " records to " << out_path << '\n';
  return kOk;
}

int cmd_convert(const std::string& in, const std::string& out_path, const std::string& fmt, std::ostream& out,
                std::ostream& err) {
  if (fs::exists(out_path)) {
    err << "error: " << out_path << " exists\n";
    return kUsage;
  }
  auto f = read_record_file(in);
  write_record_file(out_path, parse_format(fmt), f.header.mode, f.records);
  out << "wrote " << f.records.size() << " records to " << out_path << '\n';
  return kOk;
}

// ---------------------------------------------------------------- collide / stats

int cmd_collide(const std::string& in, const std::string& key, std::size_t min_size, const std::string& report_path,
                bool sigma, std::ostream& out) {
  RecordReader reader(in);
  CollisionFinder finder(CollisionKeySpec::parse(key), min_size);
  while (auto r = reader.next()) finder.add(*r);
  CollisionReport report = finder.finish();
  write_report_summary(out, report);
  if (sigma && !report.groups.empty()) {
    auto match = compare_symmetric_functions(report);
    auto n = static_cast<std::size_t>(std::count(match.begin(), match.end(), true));
    out << "groups sharing sigma_1..sigma_4: " << n << " of " << match.size() << '\n';
    for (std::size_t g = 0; g < match.size(); ++g) {
      if (match[g]) continue;
      out << "  differs: group " << g;
      for (const auto& m : report.groups[g].members) out << ' ' << format_tuple(m.qbar());
      out << '\n';
    }
  }
  if (!report_path.empty()) {
    std::ofstream csv(report_path, std::ios::trunc);
    if (!csv) throw std::runtime_error("cannot write " + report_path);
    write_report_csv(csv, report);
  }
  return kOk;
}

int cmd_stats(const std::string& in, std::ostream& out) {
  RecordReader reader(in);
  StatsSummary s;
  while (auto r = reader.next()) s.add(*r);
  out << "file: " << in << " (mode " << mode_name(reader.header().mode.kind) << ", bound "
      << reader.header().mode.bound << ")\n";
  write_stats(out, s);
  return kOk;
}

// ---------------------------------------------------------------- oracle

int cmd_oracle(std::int64_t max_abs, std::optional<std::uint64_t> max_s, std::optional<std::uint64_t> max_p1,
               const std::string& in, unsigned threads, std::ostream& out) {
  if (max_abs < 1 || max_abs > 80) throw std::invalid_argument("--max-abs must lie in [1, 80]");
  if (max_s && max_p1) throw std::invalid_argument("give one of --max-s and --max-p1");

  std::vector<ManifoldRecord> fast;
  EnumMode mode;
  if (!in.empty()) {
    auto f = read_record_file(in);
    mode = f.header.mode;
    if (max_s) mode = EnumMode::positively_curved(*max_s);
    if (max_p1) mode = EnumMode::general(*max_p1);
    for (auto& r : f.records)
      if (mode.admits(r)) fast.push_back(std::move(r));
  } else {
    if (!max_s && !max_p1) throw std::invalid_argument("give --max-s or --max-p1 (or --in)");
    mode = max_s ? EnumMode::positively_curved(*max_s) : EnumMode::general(*max_p1);
    EnumConfig cfg;
    cfg.mode = mode;
    cfg.threads = threads;
    fast = enumerate(cfg);
  }
  fast = restrict_to_box(fast, max_abs);
  auto brute = restrict_to_box(brute_force_enumerate(max_abs, mode), max_abs);

  std::map<QTuple, const ManifoldRecord*> a, b;
  for (const auto& r : fast) a[r.q] = &r;
  for (const auto& r : brute) b[r.q] = &r;
  std::size_t diffs = 0;
  for (const auto& [q, r] : a) {
    auto it = b.find(q);
    if (it == b.end()) {
      out << "only in fast: " << format_tuple(q.qbar()) << " s=" << r->inv.s << '\n';
      ++diffs;
    } else if (!(it->second->inv == r->inv) || flag_byte(*it->second) != flag_byte(*r)) {
      out << "mismatch: " << format_tuple(q.qbar()) << " fast s=" << r->inv.s << " p1=" << r->inv.p1
          << " lk=" << r->inv.lk << " p2=" << r->inv.p2 << " | brute s=" << it->second->inv.s
          << " p1=" << it->second->inv.p1 << " lk=" << it->second->inv.lk << " p2=" << it->second->inv.p2 << '\n';
      ++diffs;
    }
  }
  for (const auto& [q, r] : b)
    if (!a.count(q)) {
      out << "only in brute: " << format_tuple(q.qbar()) << " s=" << r->inv.s << '\n';
      ++diffs;
    }
  out << "mode " << mode_name(mode.kind) << " bound " << mode.bound << ", box |q_i| <= " << max_abs << '\n';
  out << "fast: " << fast.size() << " records, brute force: " << brute.size() << " records\n";
  out << "differences: " << diffs << '\n';
  return diffs == 0 ? kOk : kDiff;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Enumeration and invariants of Bazaikin spaces", "bzk"};
  app.require_subcommand(1);

  std::string tuple_text;
  auto* inv = app.add_subcommand("invariants", "Canonical form, invariants and flags of one tuple");
  inv->add_option("tuple", tuple_text, "5 or 6 comma-separated odd integers")->required();
  auto* check = app.add_subcommand("check", "Freeness, curvature and Bazaikin conditions of one tuple");
  check->add_option("tuple", tuple_text, "5 or 6 comma-separated odd integers")->required();

  EnumerateArgs ea;
  auto* en = app.add_subcommand("enumerate", "Enumerate all spaces up to a bound into a record file");
  en->add_flag("--pc", ea.pc, "Positively curved spaces, bounded by s");
  en->add_flag("--general", ea.general, "All spaces, bounded by p1");
  en->add_option("--max-s", ea.max_s, "Largest order s (with --pc)");
  en->add_option("--max-p1", ea.max_p1, "Largest p1 (with --general)");
  en->add_option("--out", ea.out, "Output record file")->required();
  en->add_option("--format", ea.format, "bin or csv")->capture_default_str();
  en->add_option("--shards", ea.shards, "Number of shards")->capture_default_str();
  en->add_option("--shard", ea.shard, "Run only this shard (0-based)");
  en->add_flag("--resume", ea.resume, "Continue from the checkpoint next to --out");
  en->add_option("--threads", ea.threads, "Worker threads (default BZK_THREADS or all cores)");
  en->add_flag("--progress", ea.progress, "Per-q5 progress on stderr");
  en->add_option("--pruning", ea.pruning, "tight or loose")->capture_default_str();

  std::vector<std::string> merge_in;
  std::string merge_out, merge_fmt = "bin";
  auto* mg = app.add_subcommand("merge", "Merge shard files into one record file");
  mg->add_option("inputs", merge_in, "Shard record files")->required();
  mg->add_option("--out", merge_out, "Output record file")->required();
  mg->add_option("--format", merge_fmt, "bin or csv")->capture_default_str();

  std::string conv_in, conv_out, conv_fmt;
  auto* cv = app.add_subcommand("convert", "Rewrite a record file as bin or csv");
  cv->add_option("--in", conv_in)->required();
  cv->add_option("--out", conv_out)->required();
  cv->add_option("--format", conv_fmt, "bin or csv")->required();

  std::string col_in, col_key, col_out;
  std::size_t min_size = 2;
  bool col_sigma = false;
  auto* co = app.add_subcommand("collide", "Group records sharing invariant values");
  co->add_option("--in", col_in, "Record file sorted by s")->required();
  co->add_option("--key", col_key, "HOMEO, HTPY, DIFF-P, COARSE or a list like s,lk,p1")->required();
  co->add_option("--min-size", min_size, "Smallest group to report")->capture_default_str();
  co->add_option("--out", col_out, "CSV report, one row per member");
  co->add_flag("--sigma", col_sigma, "Check whether groups share sigma_1..sigma_4");

  std::int64_t max_abs = 0;
  std::optional<std::uint64_t> or_max_s, or_max_p1;
  std::string or_in;
  unsigned or_threads = 0;
  auto* orc = app.add_subcommand("oracle", "Compare the enumerator with a brute-force box scan");
  orc->add_option("--max-abs", max_abs, "Box half-width, at most 80")->required();
  orc->add_option("--max-s", or_max_s, "Positively curved, s bound");
  orc->add_option("--max-p1", or_max_p1, "General, p1 bound");
  orc->add_option("--in", or_in, "Check this record file instead of a fresh enumeration");
  orc->add_option("--threads", or_threads);

  std::string stats_in;
  auto* st = app.add_subcommand("stats", "Summary statistics of a record file");
  st->add_option("--in", stats_in)->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*inv) return cmd_invariants(tuple_text, true, out);
    if (*check) return cmd_invariants(tuple_text, false, out);
    if (*en) return cmd_enumerate(ea, out, err);
    if (*mg) return cmd_merge(merge_in, merge_out, merge_fmt, out, err);
    if (*cv) return cmd_convert(conv_in, conv_out, conv_fmt, out, err);
    if (*co) return cmd_collide(col_in, col_key, min_size, col_out, col_sigma, out);
    if (*orc) return cmd_oracle(max_abs, or_max_s, or_max_p1, or_in, or_threads, out);
    if (*st) return cmd_stats(stats_in, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace bzk::cli
