#include "convgraph/motif_census.hpp"

#include <algorithm>
#include <map>

namespace convgraph {

namespace {

// Batagelj-Mrvar triad codes, indexed by d1 + 4*d2 + 16*d3 (the dyad bit
// flags with the anchor as the first node). Entries are 1-based TriadTypes.
constexpr std::array<std::uint8_t, 64> kTricodes = {
    1, 2,  2, 3,  2, 4,  6,  8,  2, 6,  5,  7,  3, 8,  7,  11, 2,  6,  4,  8,  5, 9,
    9, 13, 6, 10, 9, 14, 7,  14, 12, 15, 2, 5,  6,  7,  6,  9,  10, 14, 4,  9,  9, 12,
    8, 13, 14, 15, 3, 7, 8, 11, 7, 12, 14, 15, 8, 14, 13, 15, 11, 15, 15, 16};

constexpr std::array<std::string_view, kTriadTypeCount> kTypeNames = {
    "003", "012", "102", "021D", "021U", "021C", "111D", "111U",
    "030T", "030C", "201", "120D", "120U", "120C", "210", "300"};

struct PinnedVariant {
  TriadType base;
  TriadConfig member;
  char letter;
};

// Variants whose letter is fixed by the anchor's position.
constexpr std::array<PinnedVariant, 4> kPinned = {{
    {TriadType::T021U, {Dyad::I, Dyad::I, Dyad::N}, 'a'},  // anchor receives from both
    {TriadType::T111D, {Dyad::I, Dyad::M, Dyad::N}, 'b'},  // anchor at the apex
    {TriadType::T201, {Dyad::M, Dyad::M, Dyad::N}, 'b'},   // anchor between two mutual dyads
    {TriadType::T012, {Dyad::I, Dyad::N, Dyad::N}, 'b'},   // single edge into the anchor
}};

}  // namespace

char to_char(Dyad d) noexcept {
  switch (d) {
    case Dyad::N: return 'N';
    case Dyad::O: return 'O';
    case Dyad::I: return 'I';
    case Dyad::M: return 'M';
  }
  return '?';
}

std::string to_string(TriadConfig t) {
  return std::string{'(', to_char(t.anchor_v), ',', to_char(t.anchor_w), ',', to_char(t.v_w), ')'};
}

std::optional<TriadConfig> parse_config(std::string_view text) {
  if (text.size() != 7 || text[0] != '(' || text[2] != ',' || text[4] != ',' || text[6] != ')') {
    return std::nullopt;
  }
  auto dyad = [](char c) -> std::optional<Dyad> {
    switch (c) {
      case 'N': return Dyad::N;
      case 'O': return Dyad::O;
      case 'I': return Dyad::I;
      case 'M': return Dyad::M;
      default: return std::nullopt;
    }
  };
  auto a = dyad(text[1]), b = dyad(text[3]), c = dyad(text[5]);
  if (!a || !b || !c) return std::nullopt;
  return TriadConfig{*a, *b, *c};
}

std::string_view to_string(TriadType t) { return kTypeNames[static_cast<std::size_t>(t)]; }

TriadType triad_type(TriadConfig t) {
  const unsigned code = static_cast<unsigned>(t.anchor_v) + 4u * static_cast<unsigned>(t.anchor_w) +
                        16u * static_cast<unsigned>(t.v_w);
  return static_cast<TriadType>(kTricodes[code] - 1);
}

ManCounts man_counts(TriadConfig t) {
  ManCounts m;
  for (Dyad d : {t.anchor_v, t.anchor_w, t.v_w}) {
    if (d == Dyad::M) ++m.mutual;
    else if (d == Dyad::N) ++m.null;
    else ++m.asymmetric;
  }
  return m;
}

ClassTable::ClassTable() {
  // Orbits keyed by canonical representative, grouped by base type.
  std::map<TriadType, std::vector<TriadConfig>> by_type;
  for (std::size_t i = 0; i < TriadConfig::kCount; ++i) {
    const TriadConfig t = TriadConfig::from_index(i);
    const TriadConfig s = swap(t);
    if (s < t) continue;  // visited through its canonical twin
    by_type[triad_type(t)].push_back(t);
  }

  for (auto& [type, canon] : by_type) {
    std::sort(canon.begin(), canon.end());
    std::vector<char> letters(canon.size(), '\0');
    if (canon.size() > 1) {
      std::vector<bool> taken(canon.size(), false);
      for (const PinnedVariant& pin : kPinned) {
        if (pin.base != type) continue;
        const TriadConfig c = std::min(pin.member, swap(pin.member));
        auto pos = static_cast<std::size_t>(std::find(canon.begin(), canon.end(), c) - canon.begin());
        letters[pos] = pin.letter;
        taken[static_cast<std::size_t>(pin.letter - 'a')] = true;
      }
      std::size_t next = 0;
      for (char& l : letters) {
        if (l != '\0') continue;
        while (taken[next]) ++next;
        l = static_cast<char>('a' + next);
        taken[next] = true;
      }
    }

    std::vector<std::size_t> order(canon.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return letters[a] < letters[b]; });

    for (std::size_t k : order) {
      AnchoredTriadClass cls;
      cls.id = static_cast<ClassId>(classes_.size());
      cls.base = type;
      cls.variant = letters[k];
      cls.name = std::string(to_string(type));
      if (cls.variant != '\0') cls.name += std::string{'-', cls.variant};
      cls.members.push_back(canon[k]);
      if (swap(canon[k]) != canon[k]) cls.members.push_back(swap(canon[k]));
      cls.man = man_counts(canon[k]);
      for (TriadConfig m : cls.members) lookup_[m.index()] = cls.id;
      classes_.push_back(std::move(cls));
    }
  }
}

std::optional<ClassId> ClassTable::find(std::string_view name) const {
  for (const AnchoredTriadClass& c : classes_) {
    if (c.name == name) return c.id;
  }
  return std::nullopt;
}

ClassTable build_class_table() { return ClassTable(); }

const ClassTable& class_table() {
  static const ClassTable table;
  return table;
}

const AnchoredTriadClass& classify(TriadConfig t, const ClassTable& table) {
  return table.at(table.classify(t));
}

Dyad dyad_code(const UserGraph& g, NodeId x, NodeId y) {
  if (x >= g.node_count() || y >= g.node_count()) throw InvalidArgument("dyad node out of range");
  if (x == y) throw InvalidArgument("dyad of a node with itself");
  unsigned bits = (g.has_edge(x, y) ? 1u : 0u) | (g.has_edge(y, x) ? 2u : 0u);
  return static_cast<Dyad>(bits);
}

TriadConfig anchored_config(const UserGraph& g, NodeId v, NodeId w) {
  const NodeId a = g.anchor();
  return {dyad_code(g, a, v), dyad_code(g, a, w), dyad_code(g, v, w)};
}

std::uint64_t MotifCensus::total() const noexcept {
  std::uint64_t sum = 0;
  for (std::uint64_t c : counts) sum += c;
  return sum;
}

MotifCensus census_naive(const UserGraph& g, const ClassTable& table) {
  MotifCensus out;
  out.n_users = g.node_count();
  const NodeId a = g.anchor();
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (v == a) continue;
    for (NodeId w = v + 1; w < g.node_count(); ++w) {
      if (w == a) continue;
      ++out.counts[table.classify(anchored_config(g, v, w))];
    }
  }
  return out;
}

MotifCensus census_fast(const UserGraph& g, const ClassTable& table) {
  MotifCensus out;
  out.n_users = g.node_count();
  const std::size_t n = g.node_count();
  if (n < 3) return out;
  const NodeId a = g.anchor();

  std::vector<std::uint8_t> code(n, 0);  // dyad(anchor, v) as bit flags
  for (NodeId v : g.out_neighbors(a)) code[v] |= 1u;
  for (NodeId v : g.in_neighbors(a)) code[v] |= 2u;

  std::array<std::uint64_t, 4> tally{};
  for (NodeId v = 0; v < n; ++v) {
    if (v != a) ++tally[code[v]];
  }

  auto cls = [&](unsigned d1, unsigned d2, Dyad d3) {
    return table.classify({static_cast<Dyad>(d1), static_cast<Dyad>(d2), d3});
  };

  // Every pair starts out with a null v-w dyad.
  for (unsigned d1 = 0; d1 < 4; ++d1) {
    if (tally[d1] > 1) out.counts[cls(d1, d1, Dyad::N)] += tally[d1] * (tally[d1] - 1) / 2;
    for (unsigned d2 = d1 + 1; d2 < 4; ++d2) {
      out.counts[cls(d1, d2, Dyad::N)] += tally[d1] * tally[d2];
    }
  }

  // Move connected pairs to their true class; a mutual pair is handled from
  // its lower endpoint only.
  for (const UserEdge& e : g.edges()) {
    if (e.from == a || e.to == a) continue;
    const bool mutual = g.has_edge(e.to, e.from);
    if (mutual && e.from > e.to) continue;
    const unsigned d1 = code[e.from];
    const unsigned d2 = code[e.to];
    --out.counts[cls(d1, d2, Dyad::N)];
    ++out.counts[cls(d1, d2, mutual ? Dyad::M : Dyad::O)];
  }
  return out;
}

MotifCensus census(const UserGraph& g, const ClassTable& table, CensusMode mode) {
  return mode == CensusMode::Fast ? census_fast(g, table) : census_naive(g, table);
}

std::vector<std::pair<NodeId, NodeId>> motif_instances(const UserGraph& g, ClassId cls,
                                                       const ClassTable& table) {
  std::vector<std::pair<NodeId, NodeId>> out;
  const NodeId a = g.anchor();
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (v == a) continue;
    for (NodeId w = v + 1; w < g.node_count(); ++w) {
      if (w == a) continue;
      if (table.classify(anchored_config(g, v, w)) == cls) out.emplace_back(v, w);
    }
  }
  return out;
}

std::vector<double> completion_fractions(const UserGraph& g, ClassId cls, Timestamp t0,
                                         Timestamp t1, const ClassTable& table) {
  if (table.at(cls).edge_free()) {
    throw UndefinedMetric("edge-free class " + table.at(cls).name + " has no completion time");
  }
  if (t1 < t0) throw InvalidArgument("thread lifetime ends before it starts");

  const NodeId a = g.anchor();
  std::vector<double> out;
  for (auto [v, w] : motif_instances(g, cls, table)) {
    if (t1 == t0) {
      out.push_back(0.0);
      continue;
    }
    Timestamp last = t0;
    bool any = false;
    for (auto [x, y] : {std::pair{a, v}, std::pair{v, a}, std::pair{a, w}, std::pair{w, a},
                        std::pair{v, w}, std::pair{w, v}}) {
      if (auto t = g.edge_time(x, y)) {
        last = any ? std::max(last, *t) : *t;
        any = true;
      }
    }
    const double f = static_cast<double>(last - t0) / static_cast<double>(t1 - t0);
    out.push_back(std::clamp(f, 0.0, 1.0));
  }
  return out;
}

}  // namespace convgraph
