#include "bzk/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_set>

namespace bzk {

bool EnumMode::admits(const ManifoldRecord& r) const {
  if (kind == Mode::PositivelyCurved) return r.flags.positively_curved && r.inv.s <= bound;
  return r.inv.p1 <= bound;
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BZK_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace {

void check_width(std::int64_t v) {
  if (v > kMaxEntry)
    throw std::invalid_argument("bound needs coordinates beyond 2^20; outside the width contract");
}

std::int64_t odd_floor(std::int64_t x) { return (x % 2 == 0) ? x - 1 : x; }

}  // namespace

CoordinateBox derive_coordinate_bound(const EnumMode& mode, Pruning pruning) {
  if (mode.bound < 1) throw std::invalid_argument("bound must be at least 1");
  if (mode.kind == Mode::PositivelyCurved) {
    if (mode.bound > (std::uint64_t{1} << 40)) check_width(kMaxEntry + 1);
    // 8s >= 2 (q_5 + 1)^2, and |q_0| = q_1 + ... + q_5 <= 2 q_2 + 3 q_5.
    auto q5 = static_cast<std::int64_t>(isqrt(4 * mode.bound)) - 1;
    q5 = std::max<std::int64_t>(odd_floor(q5), 1);
    check_width(5 * q5);
    return {5 * q5, q5};
  }
  if (mode.bound > (std::uint64_t{1} << 41)) check_width(kMaxEntry + 1);
  // Tight: |q|^2 >= 6/5 q_i^2. Loose: |q_i|^2 <= |q|^2.
  std::uint64_t sq = pruning == Pruning::Tight ? (5 * mode.bound) / 3 : 2 * mode.bound;
  auto b = std::max<std::int64_t>(odd_floor(static_cast<std::int64_t>(isqrt(sq))), 1);
  check_width(b);
  return {b, b};
}

std::vector<std::int64_t> outer_values(const EnumMode& mode, const Shard& shard, Pruning pruning) {
  if (shard.total == 0 || shard.index >= shard.total)
    throw std::invalid_argument("shard index must lie in [0, total)");
  CoordinateBox box = derive_coordinate_bound(mode, pruning);
  std::vector<std::int64_t> out;
  for (std::int64_t q5 = 1; q5 <= box.max_pos; q5 += 2)
    if (static_cast<std::uint64_t>((q5 - 1) / 2) % shard.total == shard.index) out.push_back(q5);
  return out;
}

namespace {

// ---------------------------------------------------------------- scanners

struct Sink {
  const EnumMode& mode;
  std::vector<ManifoldRecord>& out;

  void offer(const Six& six, i128 expected_8s) {
    auto q = as_canonical(six);
    if (!q) {
      if (mode.kind == Mode::PositivelyCurved)
        throw BoundError("positively curved scanner produced non-canonical " + format_tuple(six));
      return;
    }
    if (!is_free(*q)) return;
    ManifoldRecord r = make_record_of_free(*q);
    if (expected_8s != 0 && static_cast<i128>(r.inv.s) * 8 != expected_8s)
      throw BoundError("order identity disagrees with sigma_3 on " + format_tuple(six));
    if (!mode.admits(r))
      throw BoundError("scanner emitted a tuple outside the mode: " + format_tuple(six));
    out.push_back(std::move(r));
  }
};

i128 pc_eight_s(i128 q1, i128 q2, i128 q3, i128 q4, i128 q5) {
  i128 a = q1 + q2;
  i128 t = q3 + q4 + q5;
  return a * a * t + a * (t * t + q1 * q2) + (q3 + q4) * (q4 + q5) * (q3 + q5);
}

void scan_pc_tight(std::int64_t q5, Sink& sink) {
  const i128 limit = static_cast<i128>(sink.mode.bound) * 8;
  for (std::int64_t q4 = 1; q4 <= q5; q4 += 2) {
    if (pc_eight_s(1, 1, 1, q4, q5) > limit) break;
    for (std::int64_t q3 = 1; q3 <= q4; q3 += 2) {
      if (pc_eight_s(2 - q3, q3, q3, q4, q5) > limit) break;
      for (std::int64_t q2 = q3; q2 >= 1; q2 -= 2) {
        if (pc_eight_s(2 - q2, q2, q3, q4, q5) > limit) break;
        for (std::int64_t q1 = 2 - q2; q1 <= q2; q1 += 2) {
          i128 v = pc_eight_s(q1, q2, q3, q4, q5);
          if (v > limit) break;
          std::int64_t q0 = -(q1 + q2 + q3 + q4 + q5);
          sink.offer({q0, q1, q2, q3, q4, q5}, v);
        }
      }
    }
  }
}

void scan_pc_loose(std::int64_t q5, Sink& sink) {
  const i128 limit = static_cast<i128>(sink.mode.bound) * 8;
  for (std::int64_t q4 = 1; q4 <= q5; q4 += 2)
    for (std::int64_t q3 = 1; q3 <= q4; q3 += 2)
      for (std::int64_t q2 = 1; q2 <= q3; q2 += 2)
        for (std::int64_t q1 = 2 - q2; q1 <= q2; q1 += 2) {
          i128 v = pc_eight_s(q1, q2, q3, q4, q5);
          if (v > limit) continue;
          std::int64_t q0 = -(q1 + q2 + q3 + q4 + q5);
          sink.offer({q0, q1, q2, q3, q4, q5}, v);
        }
}

void scan_general_tight(std::int64_t q5, Sink& sink) {
  const std::int64_t budget = static_cast<std::int64_t>(sink.mode.bound) * 2;
  const std::int64_t sq5 = q5 * q5;
  for (std::int64_t q4 = 1; q4 <= q5; q4 += 2) {
    const std::int64_t sq45 = sq5 + q4 * q4;
    if (sq45 + 1 > budget) break;
    for (std::int64_t q3 = 1; q3 <= q4; q3 += 2) {
      const std::int64_t sq345 = sq45 + q3 * q3;
      if (sq345 > budget) break;
      for (std::int64_t q2 = -q3; q2 <= q3; q2 += 2) {
        const std::int64_t rest = budget - sq345 - q2 * q2;
        if (rest < 0) continue;
        const std::int64_t sum = q2 + q3 + q4 + q5;
        // q1^2 + (q1 + sum)^2 <= rest  <=>  |2 q1 + sum| <= sqrt(2 rest - sum^2)
        const std::int64_t disc = 2 * rest - sum * sum;
        if (disc < 0) continue;
        const auto root = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(disc)));
        // q0 <= q1 and q1 <= q2 read 0 <= 2 q1 + sum <= 2 q2 + sum; sum is even.
        const std::int64_t hi = std::min(2 * q2 + sum, root);
        std::int64_t q1_lo = -sum / 2;
        if ((q1_lo & 1) == 0) ++q1_lo;
        for (std::int64_t q1 = q1_lo; 2 * q1 + sum <= hi; q1 += 2) {
          std::int64_t q0 = -(q1 + sum);
          if (q1 * q1 + q0 * q0 > rest) continue;
          sink.offer({q0, q1, q2, q3, q4, q5}, 0);
        }
      }
    }
  }
}

void scan_general_loose(std::int64_t q5, Sink& sink, std::int64_t box) {
  const std::int64_t budget = static_cast<std::int64_t>(sink.mode.bound) * 2;
  for (std::int64_t q4 = 1; q4 <= q5; q4 += 2)
    for (std::int64_t q3 = 1; q3 <= q4; q3 += 2)
      for (std::int64_t q2 = -q3; q2 <= q3; q2 += 2)
        for (std::int64_t q1 = -box; q1 <= q2; q1 += 2) {
          std::int64_t q0 = -(q1 + q2 + q3 + q4 + q5);
          if (q0 > q1 || q0 < -box) continue;
          std::int64_t norm = q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3 + q4 * q4 + q5 * q5;
          if (norm > budget) continue;
          sink.offer({q0, q1, q2, q3, q4, q5}, 0);
        }
}

void scan_outer(const EnumMode& mode, Pruning pruning, std::int64_t q5,
                std::vector<ManifoldRecord>& out) {
  Sink sink{mode, out};
  if (mode.kind == Mode::PositivelyCurved) {
    if (pruning == Pruning::Tight)
      scan_pc_tight(q5, sink);
    else
      scan_pc_loose(q5, sink);
  } else {
    if (pruning == Pruning::Tight)
      scan_general_tight(q5, sink);
    else
      scan_general_loose(q5, sink, derive_coordinate_bound(mode, Pruning::Loose).max_pos);
  }
  std::sort(out.begin(), out.end(), record_less);
}

// Nothing beyond the last scanned q_5 may be admissible. The smallest value
// of 8s (resp. 2 p_1) at the next odd q_5 must already exceed the bound.
void check_truncation(const EnumMode& mode, std::int64_t last_q5) {
  const std::int64_t next = last_q5 + 2;
  if (mode.kind == Mode::PositivelyCurved) {
    if (pc_eight_s(1, 1, 1, 1, next) <= static_cast<i128>(mode.bound) * 8)
      throw BoundError("positively curved box truncates admissible tuples at q5 = " +
                       std::to_string(next));
  } else {
    // |q|^2 >= 6/5 q_5^2
    if (static_cast<i128>(next) * next * 6 <= static_cast<i128>(mode.bound) * 10)
      throw BoundError("general box truncates admissible tuples at q5 = " + std::to_string(next));
  }
}

// ---------------------------------------------------------------- checkpoints

constexpr char kCkptMagic[4] = {'B', 'Z', 'K', 'K'};
constexpr char kBlockBegin[4] = {'B', 'L', 'K', '0'};
constexpr char kBlockEnd[4] = {'E', 'N', 'D', '0'};
constexpr std::size_t kCkptHeader = 4 + 1 + 1 + 8 + 4 + 4;

std::array<std::uint8_t, kCkptHeader> checkpoint_header(const EnumConfig& cfg) {
  std::array<std::uint8_t, kCkptHeader> h{};
  std::copy(std::begin(kCkptMagic), std::end(kCkptMagic), h.begin());
  h[4] = static_cast<std::uint8_t>(cfg.mode.kind);
  h[5] = static_cast<std::uint8_t>(cfg.pruning == Pruning::Tight ? 0 : 1);
  put_u64(h.data() + 6, cfg.mode.bound);
  put_i32(h.data() + 14, static_cast<std::int32_t>(cfg.shard.index));
  put_i32(h.data() + 18, static_cast<std::int32_t>(cfg.shard.total));
  return h;
}

// Reads completed blocks. A trailing block cut short by an interrupted
// write is dropped and the file truncated to the last complete block.
std::map<std::int64_t, std::vector<ManifoldRecord>> load_checkpoint(const EnumConfig& cfg) {
  std::map<std::int64_t, std::vector<ManifoldRecord>> done;
  const auto& path = cfg.checkpoint;
  if (!std::filesystem::exists(path)) return done;

  std::ifstream in(path, std::ios::binary);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), {});
  in.close();

  auto header = checkpoint_header(cfg);
  if (bytes.size() < kCkptHeader) {
    std::filesystem::remove(path);
    return done;
  }
  if (!std::equal(header.begin(), header.end(), bytes.begin()))
    throw CheckpointError("checkpoint " + path.string() + " belongs to a different run configuration");

  std::size_t pos = kCkptHeader;
  std::size_t good = pos;
  while (pos < bytes.size()) {
    if (bytes.size() - pos < 20) break;
    if (!std::equal(std::begin(kBlockBegin), std::end(kBlockBegin), bytes.begin() + pos))
      throw CheckpointError("checkpoint corruption: bad block marker at offset " + std::to_string(pos));
    auto value = static_cast<std::int64_t>(get_u64(bytes.data() + pos + 4));
    std::uint64_t count = get_u64(bytes.data() + pos + 12);
    std::size_t body = pos + 20;
    if (count > (bytes.size() - body) / kRecordBytes) break;
    std::size_t end = body + count * kRecordBytes;
    if (bytes.size() - end < 4) break;
    if (!std::equal(std::begin(kBlockEnd), std::end(kBlockEnd), bytes.begin() + end))
      throw CheckpointError("checkpoint corruption: bad block trailer at offset " + std::to_string(end));
    std::vector<ManifoldRecord> recs;
    recs.reserve(count);
    try {
      for (std::uint64_t i = 0; i < count; ++i)
        recs.push_back(decode_record(
            std::span<const std::uint8_t, kRecordBytes>(bytes.data() + body + i * kRecordBytes, kRecordBytes)));
    } catch (const FormatError& e) {
      throw CheckpointError(std::string("checkpoint corruption: ") + e.what());
    }
    for (const auto& r : recs)
      if (r.q[5] != value) throw CheckpointError("checkpoint corruption: record outside its block");
    if (!done.emplace(value, std::move(recs)).second)
      throw CheckpointError("checkpoint corruption: duplicate block for q5 = " + std::to_string(value));
    pos = end + 4;
    good = pos;
  }
  if (good != bytes.size()) std::filesystem::resize_file(path, good);
  return done;
}

class CheckpointWriter {
 public:
  explicit CheckpointWriter(const EnumConfig& cfg) {
    if (cfg.checkpoint.empty()) return;
    bool fresh = !std::filesystem::exists(cfg.checkpoint);
    out_.open(cfg.checkpoint, std::ios::binary | std::ios::app);
    if (!out_) throw CheckpointError("cannot open checkpoint " + cfg.checkpoint.string());
    if (fresh) {
      auto h = checkpoint_header(cfg);
      out_.write(reinterpret_cast<const char*>(h.data()), h.size());
      out_.flush();
    }
  }

  void append(std::int64_t value, const std::vector<ManifoldRecord>& recs) {
    if (!out_.is_open()) return;
    std::vector<std::uint8_t> buf(20 + recs.size() * kRecordBytes + 4);
    std::copy(std::begin(kBlockBegin), std::end(kBlockBegin), buf.begin());
    put_u64(buf.data() + 4, static_cast<std::uint64_t>(value));
    put_u64(buf.data() + 12, recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i)
      encode_record(recs[i], std::span<std::uint8_t, kRecordBytes>(buf.data() + 20 + i * kRecordBytes, kRecordBytes));
    std::copy(std::begin(kBlockEnd), std::end(kBlockEnd), buf.end() - 4);
    out_.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    out_.flush();
  }

 private:
  std::ofstream out_;
};

}  // namespace

std::vector<ManifoldRecord> merge_sorted(std::vector<std::vector<ManifoldRecord>> parts) {
  std::vector<ManifoldRecord> out;
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  out.reserve(total);
  for (auto& p : parts) {
    auto mid = out.size();
    std::move(p.begin(), p.end(), std::back_inserter(out));
    std::inplace_merge(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(mid), out.end(), record_less);
  }
  return out;
}

std::vector<ManifoldRecord> enumerate(const EnumConfig& cfg) {
  const auto outer = outer_values(cfg.mode, cfg.shard, cfg.pruning);
  if (cfg.pruning == Pruning::Tight) {
    std::int64_t last = odd_floor(derive_coordinate_bound(cfg.mode).max_pos);
    check_truncation(cfg.mode, last);
  }

  std::map<std::int64_t, std::vector<ManifoldRecord>> done;
  if (!cfg.checkpoint.empty()) done = load_checkpoint(cfg);
  for (const auto& [value, recs] : done)
    if (!std::binary_search(outer.begin(), outer.end(), value))
      throw CheckpointError("checkpoint block q5 = " + std::to_string(value) + " is not part of this run");

  std::vector<std::int64_t> pending;
  for (auto v : outer)
    if (!done.count(v)) pending.push_back(v);

  std::vector<std::vector<ManifoldRecord>> results(pending.size());
  CheckpointWriter writer(cfg);
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr failure;
  std::size_t finished = done.size();
  std::size_t record_count = 0;
  for (const auto& [v, r] : done) record_count += r.size();
  const auto start = std::chrono::steady_clock::now();

  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= pending.size()) return;
      {
        std::lock_guard lock(mu);
        if (failure) return;
      }
      try {
        std::vector<ManifoldRecord> local;
        scan_outer(cfg.mode, cfg.pruning, pending[i], local);
        std::lock_guard lock(mu);
        writer.append(pending[i], local);
        ++finished;
        record_count += local.size();
        if (cfg.progress) {
          double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
          cfg.progress({pending[i], finished, outer.size(), record_count, secs});
        }
        results[i] = std::move(local);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  unsigned n = std::min<std::size_t>(resolve_threads(cfg.threads), std::max<std::size_t>(pending.size(), 1));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (failure) std::rethrow_exception(failure);

  for (auto& [v, r] : done) results.push_back(std::move(r));
  return merge_sorted(std::move(results));
}

// ---------------------------------------------------------------- oracle

namespace {
struct SixHash {
  std::size_t operator()(const Six& s) const {
    std::size_t h = 0;
    for (auto x : s) h = h * 1000003u ^ std::hash<std::int64_t>{}(x);
    return h;
  }
};
}  // namespace

std::vector<ManifoldRecord> brute_force_enumerate(std::int64_t coord_bound, const EnumMode& mode) {
  if (coord_bound < 1) throw std::invalid_argument("coordinate bound must be positive");
  std::unordered_set<Six, SixHash> seen;
  std::vector<ManifoldRecord> out;
  const std::int64_t lo = -odd_floor(coord_bound);
  const std::int64_t hi = odd_floor(coord_bound);
  Five f;
  for (f[0] = lo; f[0] <= hi; f[0] += 2)
    for (f[1] = lo; f[1] <= hi; f[1] += 2)
      for (f[2] = lo; f[2] <= hi; f[2] += 2)
        for (f[3] = lo; f[3] <= hi; f[3] += 2)
          for (f[4] = lo; f[4] <= hi; f[4] += 2) {
            QTuple q = canonicalize(from_qbar(RawTuple5(f)));
            if (!seen.insert(q.values()).second) continue;
            if (!is_free(q)) continue;
            // Curvature through the full six-base-point scan, not the
            // canonical shortcut the fast enumerator relies on.
            ManifoldRecord r{q, full_record_of_free(q), {}};
            r.flags.free = true;
            r.flags.pc_witness = positively_curved(q);
            r.flags.positively_curved = r.flags.pc_witness.has_value();
            r.flags.bazaikin_original = bazaikin_original(q);
            if (mode.admits(r)) out.push_back(std::move(r));
          }
  std::sort(out.begin(), out.end(), record_less);
  return out;
}

std::vector<ManifoldRecord> restrict_to_box(std::span<const ManifoldRecord> records,
                                            std::int64_t coord_bound) {
  std::vector<ManifoldRecord> out;
  for (const auto& r : records)
    if (r.q.max_abs() <= coord_bound) out.push_back(r);
  return out;
}

}  // namespace bzk
