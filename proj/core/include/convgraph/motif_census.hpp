#pragma once

// Anchored triad census.
//
// A triad (anchor, v, w) is described by three dyad codes:
//   (dyad(anchor, v), dyad(anchor, w), dyad(v, w)),
// giving 64 labelled configurations. Swapping v and w maps
//   (d1, d2, d3) -> (d2, d1, flip(d3)),
// and the 36 orbits of that swap are the anchored triad classes. Each class
// carries its Holland-Leinhardt M-A-N type plus a variant letter when the
// type splits into more than one anchored class.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "convgraph/graphs.hpp"

namespace convgraph {

/// Dyad state of an ordered pair (x, y). The numeric values double as bit
/// flags: bit 0 is x -> y, bit 1 is y -> x.
enum class Dyad : std::uint8_t { N = 0, O = 1, I = 2, M = 3 };

constexpr Dyad flip(Dyad d) noexcept {
  switch (d) {
    case Dyad::O: return Dyad::I;
    case Dyad::I: return Dyad::O;
    default: return d;
  }
}

char to_char(Dyad d) noexcept;

struct TriadConfig {
  Dyad anchor_v = Dyad::N;
  Dyad anchor_w = Dyad::N;
  Dyad v_w = Dyad::N;

  static constexpr std::size_t kCount = 64;

  constexpr std::size_t index() const noexcept {
    return 16u * static_cast<unsigned>(anchor_v) + 4u * static_cast<unsigned>(anchor_w) +
           static_cast<unsigned>(v_w);
  }
  static constexpr TriadConfig from_index(std::size_t i) noexcept {
    return {static_cast<Dyad>((i >> 4) & 3u), static_cast<Dyad>((i >> 2) & 3u),
            static_cast<Dyad>(i & 3u)};
  }

  // Lexicographic under N < O < I < M.
  constexpr auto operator<=>(const TriadConfig& o) const noexcept { return index() <=> o.index(); }
  constexpr bool operator==(const TriadConfig& o) const noexcept { return index() == o.index(); }
};

/// The same triad seen with v and w exchanged.
constexpr TriadConfig swap(TriadConfig t) noexcept { return {t.anchor_w, t.anchor_v, flip(t.v_w)}; }

/// "(I,M,N)" style rendering; parse_config accepts the same text.
std::string to_string(TriadConfig t);
std::optional<TriadConfig> parse_config(std::string_view text);

/// The 16 unanchored Holland-Leinhardt triad types, in census order.
enum class TriadType : std::uint8_t {
  T003, T012, T102, T021D, T021U, T021C, T111D, T111U,
  T030T, T030C, T201, T120D, T120U, T120C, T210, T300
};

inline constexpr std::size_t kTriadTypeCount = 16;

std::string_view to_string(TriadType t);

/// Isomorphism type of the triad, ignoring which node is the anchor.
TriadType triad_type(TriadConfig t);

struct ManCounts {
  int mutual = 0;
  int asymmetric = 0;
  int null = 0;

  bool operator==(const ManCounts&) const = default;
};

ManCounts man_counts(TriadConfig t);

inline constexpr std::size_t kClassCount = 36;
using ClassId = std::uint8_t;

struct AnchoredTriadClass {
  ClassId id = 0;
  TriadType base = TriadType::T003;
  char variant = '\0';  // 'a', 'b', 'c', or '\0' when the type has one anchored class
  std::string name;     // e.g. "021U-a", "300"
  std::vector<TriadConfig> members;  // swap orbit, canonical (smallest) first
  ManCounts man;

  TriadConfig canonical() const { return members.front(); }
  bool edge_free() const noexcept { return base == TriadType::T003; }
};

/// Total map from the 64 configurations to the 36 anchored classes. Class ids
/// follow the census order of the base types, then the variant letter.
///
/// Letters are fixed for the variants whose anchor position is pinned by name
/// (021U-a, 111D-b, 201-b with the anchor at the apex; 012-b with the single
/// edge pointing into the anchor). Remaining letters go to the remaining
/// classes of each type in ascending canonical-configuration order.
class ClassTable {
 public:
  ClassTable();

  std::span<const AnchoredTriadClass> classes() const noexcept { return classes_; }
  const AnchoredTriadClass& at(ClassId id) const { return classes_.at(id); }

  ClassId classify(TriadConfig t) const noexcept { return lookup_[t.index()]; }
  std::optional<ClassId> find(std::string_view name) const;

 private:
  std::vector<AnchoredTriadClass> classes_;
  std::array<ClassId, TriadConfig::kCount> lookup_{};
};

ClassTable build_class_table();

/// Process-wide immutable table.
const ClassTable& class_table();

const AnchoredTriadClass& classify(TriadConfig t, const ClassTable& table);

/// Throws InvalidArgument when x == y or either node is out of range.
Dyad dyad_code(const UserGraph& g, NodeId x, NodeId y);

/// Configuration of the triad formed by the anchor and two other nodes.
TriadConfig anchored_config(const UserGraph& g, NodeId v, NodeId w);

struct MotifCensus {
  std::array<std::uint64_t, kClassCount> counts{};
  std::size_t n_users = 0;

  std::uint64_t total() const noexcept;
  std::uint64_t operator[](ClassId id) const noexcept { return counts[id]; }
  bool operator==(const MotifCensus&) const = default;
};

/// Classifies every unordered pair of non-anchor nodes. O(n^2).
MotifCensus census_naive(const UserGraph& g, const ClassTable& table);

/// Same result as census_naive in O(n + m log d). Pairs are first counted in
/// closed form from the anchor's dyad tallies assuming no v-w edge; a single
/// pass over edges among non-anchor nodes then moves each connected pair to
/// its true class.
MotifCensus census_fast(const UserGraph& g, const ClassTable& table);

enum class CensusMode { Fast, Naive };

MotifCensus census(const UserGraph& g, const ClassTable& table, CensusMode mode = CensusMode::Fast);

/// Unordered pairs {v, w}, v < w, whose triad with the anchor falls in `cls`.
std::vector<std::pair<NodeId, NodeId>> motif_instances(const UserGraph& g, ClassId cls,
                                                       const ClassTable& table);

/// For every instance of `cls`, the time its last edge appeared as a fraction
/// of [t0, t1], clamped to [0, 1]. All fractions are 0 when t1 == t0.
/// Throws UndefinedMetric for the edge-free class and InvalidArgument when t1 < t0.
std::vector<double> completion_fractions(const UserGraph& g, ClassId cls, Timestamp t0,
                                         Timestamp t1, const ClassTable& table);

}  // namespace convgraph
