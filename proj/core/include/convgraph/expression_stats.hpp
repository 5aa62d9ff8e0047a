#pragma once

// Size-binned comparison of a focus corpus' anchored-triad counts against a
// baseline corpus used as the null model.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "convgraph/motif_census.hpp"

namespace convgraph {

struct BinRange {
  std::size_t lo = 0;  // inclusive
  std::size_t hi = 0;  // inclusive

  bool contains(std::size_t n) const noexcept { return lo <= n && n <= hi; }
  std::string label() const;  // "6-10"
  bool operator==(const BinRange&) const = default;
};

class BinSpec {
 public:
  /// 1-5, 6-10, ..., 36-40.
  BinSpec();

  /// Throws InvalidArgument unless every range has lo <= hi and ranges are
  /// strictly ascending without overlap.
  explicit BinSpec(std::vector<BinRange> ranges);

  /// Parses "1-5,6-10,11-15". Throws InvalidArgument on malformed text.
  static BinSpec parse(std::string_view text);

  std::span<const BinRange> ranges() const noexcept { return ranges_; }
  std::size_t size() const noexcept { return ranges_.size(); }
  std::optional<std::size_t> find(std::size_t n_users) const;
  std::string to_string() const;

 private:
  std::vector<BinRange> ranges_;
};

/// Count vectors grouped per bin; censuses outside every range are only counted.
struct BinnedGroups {
  BinSpec spec;
  std::vector<std::vector<MotifCensus>> bins;
  std::size_t unbinned = 0;
};

BinnedGroups assign_bins(std::span<const MotifCensus> censuses, const BinSpec& spec);

/// Mean and population standard deviation of one class in one bin.
struct Moments {
  double mean = 0.0;
  double stddev = 0.0;
};

Moments population_moments(std::span<const MotifCensus> group, ClassId cls);

struct NullBin {
  std::size_t graphs = 0;  // M
  std::array<Moments, kClassCount> stats{};

  bool empty() const noexcept { return graphs == 0; }
};

struct NullModel {
  BinSpec spec;
  std::vector<NullBin> bins;
};

NullModel fit_null_model(const BinnedGroups& baseline);

enum class Expression { Over, Under, Equal, Rare };

std::string_view to_string(Expression e);

struct ZCell {
  std::size_t bin = 0;
  ClassId cls = 0;
  std::size_t baseline_graphs = 0;  // M
  double mu_null = 0.0;
  double sigma_null = 0.0;
  double se_null = 0.0;
  std::size_t focus_graphs = 0;  // N
  double mean_focus = 0.0;
  double sigma_focus = 0.0;
  double se_focus = 0.0;
  std::optional<double> z;  // empty when undefined; see reason
  std::string reason;
  std::optional<Expression> label;  // set by classify_expression

  bool has_baseline() const noexcept { return baseline_graphs > 0; }
  bool has_focus() const noexcept { return focus_graphs > 0; }
};

/// Corpus-level verdict for one class across all bins.
struct ClassExpression {
  ClassId cls = 0;
  bool rare = false;
  bool over = false;   // Z > 1 in at least one bin
  bool under = false;  // Z < -1 in at least one bin
  double max_mean = 0.0;
  std::size_t bins_over = 0;
  std::size_t bins_under = 0;

  /// "rare", "over", "under", "over+under" or "equal".
  std::string label() const;
};

struct ZReport {
  BinSpec spec;
  std::vector<ZCell> cells;  // bin-major, class-minor: cells[bin * 36 + cls]
  std::vector<ClassExpression> summary;  // filled by classify_expression

  const ZCell& cell(std::size_t bin, ClassId cls) const { return cells[bin * kClassCount + cls]; }
  ZCell& cell(std::size_t bin, ClassId cls) { return cells[bin * kClassCount + cls]; }
};

inline constexpr std::string_view kReasonEmptyBaseline = "empty baseline bin";
inline constexpr std::string_view kReasonEmptyFocus = "empty focus bin";
inline constexpr std::string_view kReasonZeroVariance = "zero baseline variance";

/// Z = (mean_focus - mu_null) / sigma_null per bin and class, with standard
/// errors sigma / sqrt(count). Undefined cells carry a reason instead of a Z.
/// Throws InvalidArgument when the two inputs use different bin specs.
ZReport z_scores(const BinnedGroups& focus, const NullModel& null);

inline constexpr double kDefaultRarityThreshold = 10.0;
inline constexpr double kDefaultZThreshold = 1.0;

/// Labels each cell and fills the per-class summary. A class is rare when no
/// populated bin of either corpus has a mean above `rarity_threshold`; every
/// cell of a rare class is labelled Rare. Otherwise cells with a defined Z get
/// Over (Z > z_threshold), Under (Z < -z_threshold) or Equal; undefined cells
/// stay unlabelled.
void classify_expression(ZReport& report, double rarity_threshold = kDefaultRarityThreshold,
                         double z_threshold = kDefaultZThreshold);

}  // namespace convgraph
