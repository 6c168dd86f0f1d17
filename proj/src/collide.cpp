#include "bzk/collide.hpp"

#include <algorithm>
#include <cctype>

namespace bzk {

std::string_view to_string(KeyComponent c) {
  switch (c) {
    case KeyComponent::S: return "s";
    case KeyComponent::P1: return "p1";
    case KeyComponent::P1Mod24: return "p1_mod24";
    case KeyComponent::Lk: return "lk";
    case KeyComponent::P2: return "p2";
  }
  return "?";
}

CollisionKeySpec CollisionKeySpec::homeo() {
  return {{KeyComponent::S, KeyComponent::Lk, KeyComponent::P1}};
}
CollisionKeySpec CollisionKeySpec::htpy() {
  return {{KeyComponent::S, KeyComponent::Lk, KeyComponent::P1Mod24}};
}
CollisionKeySpec CollisionKeySpec::diff_p() {
  return {{KeyComponent::S, KeyComponent::P1, KeyComponent::P2}};
}
CollisionKeySpec CollisionKeySpec::coarse() { return {{KeyComponent::S, KeyComponent::P1}}; }

CollisionKeySpec CollisionKeySpec::parse(std::string_view text) {
  std::string t;
  for (char c : text)
    if (c != ' ') t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (t == "homeo") return homeo();
  if (t == "htpy") return htpy();
  if (t == "diff-p" || t == "diffp" || t == "diff_p") return diff_p();
  if (t == "coarse") return coarse();

  CollisionKeySpec spec;
  std::size_t pos = 0;
  while (pos <= t.size()) {
    std::size_t comma = t.find(',', pos);
    std::string name = t.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    KeyComponent c;
    if (name == "s")
      c = KeyComponent::S;
    else if (name == "p1")
      c = KeyComponent::P1;
    else if (name == "p1_mod24" || name == "p1mod24")
      c = KeyComponent::P1Mod24;
    else if (name == "lk")
      c = KeyComponent::Lk;
    else if (name == "p2")
      c = KeyComponent::P2;
    else
      throw std::invalid_argument("unknown key component '" + name + "'");
    if (spec.has(c)) throw std::invalid_argument("key component '" + name + "' repeated");
    spec.components.push_back(c);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return spec;
}

std::string CollisionKeySpec::describe() const {
  std::string out;
  for (auto c : components) {
    if (!out.empty()) out += ',';
    out += to_string(c);
  }
  return out;
}

bool CollisionKeySpec::has(KeyComponent c) const {
  return std::find(components.begin(), components.end(), c) != components.end();
}

KeyValues key_of(const ManifoldRecord& r, const CollisionKeySpec& spec) {
  KeyValues k;
  k.reserve(spec.components.size());
  for (auto c : spec.components) {
    switch (c) {
      case KeyComponent::S: k.push_back(r.inv.s); break;
      case KeyComponent::P1: k.push_back(r.inv.p1); break;
      case KeyComponent::P1Mod24: k.push_back(static_cast<std::uint64_t>(r.inv.p1_mod24)); break;
      case KeyComponent::Lk: k.push_back(r.inv.lk); break;
      case KeyComponent::P2: k.push_back(r.inv.p2); break;
    }
  }
  return k;
}

std::uint64_t CollisionReport::matching_pairs() const {
  std::uint64_t n = 0;
  for (auto [size, count] : histogram) n += count * (size * (size - 1) / 2);
  return n;
}

CollisionFinder::CollisionFinder(CollisionKeySpec spec, std::size_t min_size) {
  if (spec.components.empty()) throw std::invalid_argument("collision key needs at least one component");
  if (min_size < 2) throw std::invalid_argument("minimum group size is 2");
  report_.spec = std::move(spec);
  report_.min_size = min_size;
}

void CollisionFinder::add(const ManifoldRecord& r) {
  if (current_s_ && r.inv.s < *current_s_)
    throw UnsortedInput("records not sorted by s (" + std::to_string(r.inv.s) + " after " +
                        std::to_string(*current_s_) + ")");
  if (current_s_ && r.inv.s != *current_s_ && report_.spec.has(KeyComponent::S)) flush();
  current_s_ = r.inv.s;
  ++report_.records_seen;
  pending_[key_of(r, report_.spec)].emplace_back(r.inv.s, r.q);
}

void CollisionFinder::flush() {
  for (auto& [key, members] : pending_) {
    if (members.size() < report_.min_size) continue;
    std::sort(members.begin(), members.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    CollisionGroup g;
    g.key = key;
    g.s = members.front().first;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i > 0 && members[i].second == members[i - 1].second)
        throw std::invalid_argument("equivalent tuple " + format_tuple(members[i].second.values()) +
                                    " appears twice");
      g.members.push_back(members[i].second);
    }
    // Without s in the key a group can span strata; report its smallest s.
    for (const auto& m : members) g.s = std::min(g.s, m.first);
    ++report_.histogram[g.members.size()];
    report_.groups.push_back(std::move(g));
  }
  pending_.clear();
}

CollisionReport CollisionFinder::finish() {
  flush();
  std::stable_sort(report_.groups.begin(), report_.groups.end(),
                   [](const CollisionGroup& a, const CollisionGroup& b) { return a.key < b.key; });
  CollisionReport out = std::move(report_);
  report_ = CollisionReport{out.spec, out.min_size, {}, {}, 0};
  current_s_.reset();
  return out;
}

CollisionReport find_collisions(std::span<const ManifoldRecord> records, const CollisionKeySpec& spec,
                                std::size_t min_size) {
  CollisionFinder f(spec, min_size);
  for (const auto& r : records) f.add(r);
  return f.finish();
}

bool compare_symmetric_functions(std::span<const QTuple> group) {
  if (group.size() < 2) throw std::invalid_argument("a group needs at least two members");
  for (std::size_t i = 0; i < group.size(); ++i)
    for (std::size_t j = i + 1; j < group.size(); ++j)
      if (group[i] == group[j])
        throw std::invalid_argument("group contains equivalent tuples " + format_tuple(group[i].values()));
  // On the six-entry form sigma_1..sigma_4 are fixed by s, p1, p2; the
  // comparison is over q_1..q_5.
  auto first = symmetric_profile(group[0].qbar());
  for (std::size_t i = 1; i < group.size(); ++i) {
    auto p = symmetric_profile(group[i].qbar());
    for (std::size_t k = 1; k <= 4; ++k)
      if (p[k] != first[k]) return false;
  }
  return true;
}

std::vector<bool> compare_symmetric_functions(const CollisionReport& report) {
  std::vector<bool> out;
  out.reserve(report.groups.size());
  for (const auto& g : report.groups) out.push_back(compare_symmetric_functions(g.members));
  return out;
}

std::vector<QTuple> match_target(std::span<const ManifoldRecord> records, const InvariantTarget& t) {
  std::vector<QTuple> out;
  for (const auto& r : records) {
    if (t.s && r.inv.s != *t.s) continue;
    if (t.p1 && r.inv.p1 != *t.p1) continue;
    if (t.p1_mod24 && r.inv.p1_mod24 != *t.p1_mod24) continue;
    if (t.lk && r.inv.lk != *t.lk) continue;
    if (t.p2 && r.inv.p2 != *t.p2) continue;
    out.push_back(r.q);
  }
  return out;
}

void write_report_csv(std::ostream& out, const CollisionReport& report) {
  out << "group,size";
  for (auto c : report.spec.components) out << ',' << to_string(c);
  out << ",q1,q2,q3,q4,q5\n";
  for (std::size_t g = 0; g < report.groups.size(); ++g) {
    const auto& grp = report.groups[g];
    for (const auto& m : grp.members) {
      out << g << ',' << grp.members.size();
      for (auto v : grp.key) out << ',' << v;
      for (std::size_t i = 1; i < 6; ++i) out << ',' << m[i];
      out << '\n';
    }
  }
}

namespace {
std::string size_name(std::size_t k) {
  switch (k) {
    case 2: return "pairs";
    case 3: return "triplets";
    case 4: return "quadruples";
    default: return std::to_string(k) + "-tuples";
  }
}
}  // namespace

void write_report_summary(std::ostream& out, const CollisionReport& report) {
  out << "key: " << report.spec.describe() << '\n';
  out << "records: " << report.records_seen << '\n';
  out << "groups: " << report.groups.size() << '\n';
  if (report.groups.empty()) {
    out << "no collisions\n";
    return;
  }
  for (auto [size, count] : report.histogram) out << size_name(size) << ": " << count << '\n';
  out << "matching pairs (sum of C(k,2)): " << report.matching_pairs() << '\n';

  std::map<std::size_t, const CollisionGroup*> first_of_size;
  for (const auto& g : report.groups) {
    auto& slot = first_of_size[g.members.size()];
    if (!slot || g.s < slot->s) slot = &g;
  }
  for (auto [size, g] : first_of_size) {
    out << "smallest-s " << size_name(size).substr(0, size_name(size).size() - 1) << ':';
    if (!report.spec.has(KeyComponent::S)) out << " s=" << g->s;
    for (std::size_t i = 0; i < g->key.size(); ++i)
      out << ' ' << to_string(report.spec.components[i]) << '=' << g->key[i];
    out << " members";
    for (const auto& m : g->members) out << ' ' << format_tuple(m.qbar());
    out << '\n';
  }
}

}  // namespace bzk
