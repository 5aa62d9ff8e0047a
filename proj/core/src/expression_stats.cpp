#include "convgraph/expression_stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace convgraph {

namespace {

std::size_t parse_count(std::string_view text, std::string_view whole) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw InvalidArgument("bad bin spec '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

std::string BinRange::label() const { return std::to_string(lo) + "-" + std::to_string(hi); }

BinSpec::BinSpec()
    : ranges_{{1, 5}, {6, 10}, {11, 15}, {16, 20}, {21, 25}, {26, 30}, {31, 35}, {36, 40}} {}

BinSpec::BinSpec(std::vector<BinRange> ranges) : ranges_(std::move(ranges)) {
  if (ranges_.empty()) throw InvalidArgument("bin spec needs at least one range");
  for (std::size_t i = 0; i < ranges_.size(); ++i) {
    if (ranges_[i].lo > ranges_[i].hi) {
      throw InvalidArgument("bin " + ranges_[i].label() + " has lo > hi");
    }
    if (i > 0 && ranges_[i].lo <= ranges_[i - 1].hi) {
      throw InvalidArgument("bin " + ranges_[i].label() + " overlaps or precedes " +
                            ranges_[i - 1].label());
    }
  }
}

BinSpec BinSpec::parse(std::string_view text) {
  std::vector<BinRange> ranges;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(start, comma - start);
    std::size_t dash = item.find('-');
    if (dash == std::string_view::npos) throw InvalidArgument("bad bin spec '" + std::string(text) + "'");
    ranges.push_back({parse_count(item.substr(0, dash), text), parse_count(item.substr(dash + 1), text)});
    start = comma + 1;
  }
  return BinSpec(std::move(ranges));
}

std::optional<std::size_t> BinSpec::find(std::size_t n_users) const {
  for (std::size_t i = 0; i < ranges_.size(); ++i) {
    if (ranges_[i].contains(n_users)) return i;
  }
  return std::nullopt;
}

std::string BinSpec::to_string() const {
  std::string out;
  for (const BinRange& r : ranges_) {
    if (!out.empty()) out += ',';
    out += r.label();
  }
  return out;
}

BinnedGroups assign_bins(std::span<const MotifCensus> censuses, const BinSpec& spec) {
  BinnedGroups g{spec, std::vector<std::vector<MotifCensus>>(spec.size()), 0};
  for (const MotifCensus& c : censuses) {
    if (auto b = spec.find(c.n_users)) {
      g.bins[*b].push_back(c);
    } else {
      ++g.unbinned;
    }
  }
  return g;
}

Moments population_moments(std::span<const MotifCensus> group, ClassId cls) {
  Moments m;
  if (group.empty()) return m;
  const double n = static_cast<double>(group.size());
  double sum = 0.0;
  for (const MotifCensus& c : group) sum += static_cast<double>(c.counts[cls]);
  m.mean = sum / n;
  double ss = 0.0;
  for (const MotifCensus& c : group) {
    const double d = static_cast<double>(c.counts[cls]) - m.mean;
    ss += d * d;
  }
  m.stddev = std::sqrt(ss / n);
  return m;
}

NullModel fit_null_model(const BinnedGroups& baseline) {
  NullModel model{baseline.spec, std::vector<NullBin>(baseline.bins.size())};
  for (std::size_t b = 0; b < baseline.bins.size(); ++b) {
    model.bins[b].graphs = baseline.bins[b].size();
    for (ClassId c = 0; c < kClassCount; ++c) {
      model.bins[b].stats[c] = population_moments(baseline.bins[b], c);
    }
  }
  return model;
}

std::string_view to_string(Expression e) {
  switch (e) {
    case Expression::Over: return "over";
    case Expression::Under: return "under";
    case Expression::Equal: return "equal";
    case Expression::Rare: return "rare";
  }
  return "";
}

std::string ClassExpression::label() const {
  if (rare) return "rare";
  if (over && under) return "over+under";
  if (over) return "over";
  if (under) return "under";
  return "equal";
}

ZReport z_scores(const BinnedGroups& focus, const NullModel& null) {
  if (focus.spec.ranges().size() != null.spec.ranges().size() ||
      !std::equal(focus.spec.ranges().begin(), focus.spec.ranges().end(),
                  null.spec.ranges().begin())) {
    throw InvalidArgument("focus and baseline use different bins");
  }

  ZReport report;
  report.spec = focus.spec;
  report.cells.reserve(focus.bins.size() * kClassCount);
  for (std::size_t b = 0; b < focus.bins.size(); ++b) {
    const NullBin& nb = null.bins[b];
    const auto& group = focus.bins[b];
    for (ClassId c = 0; c < kClassCount; ++c) {
      ZCell cell;
      cell.bin = b;
      cell.cls = c;
      cell.baseline_graphs = nb.graphs;
      cell.focus_graphs = group.size();
      if (!nb.empty()) {
        cell.mu_null = nb.stats[c].mean;
        cell.sigma_null = nb.stats[c].stddev;
        cell.se_null = cell.sigma_null / std::sqrt(static_cast<double>(nb.graphs));
      }
      if (!group.empty()) {
        const Moments fm = population_moments(group, c);
        cell.mean_focus = fm.mean;
        cell.sigma_focus = fm.stddev;
        cell.se_focus = fm.stddev / std::sqrt(static_cast<double>(group.size()));
      }

      if (nb.empty()) {
        cell.reason = kReasonEmptyBaseline;
      } else if (group.empty()) {
        cell.reason = kReasonEmptyFocus;
      } else if (cell.sigma_null == 0.0) {
        cell.reason = kReasonZeroVariance;
      } else {
        cell.z = (cell.mean_focus - cell.mu_null) / cell.sigma_null;
      }
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

void classify_expression(ZReport& report, double rarity_threshold, double z_threshold) {
  const std::size_t n_bins = report.cells.size() / kClassCount;
  report.summary.assign(kClassCount, {});
  for (ClassId c = 0; c < kClassCount; ++c) {
    ClassExpression& s = report.summary[c];
    s.cls = c;
    for (std::size_t b = 0; b < n_bins; ++b) {
      const ZCell& cell = report.cell(b, c);
      if (cell.has_baseline()) s.max_mean = std::max(s.max_mean, cell.mu_null);
      if (cell.has_focus()) s.max_mean = std::max(s.max_mean, cell.mean_focus);
    }
    s.rare = !(s.max_mean > rarity_threshold);

    for (std::size_t b = 0; b < n_bins; ++b) {
      ZCell& cell = report.cell(b, c);
      if (s.rare) {
        cell.label = Expression::Rare;
        continue;
      }
      if (!cell.z) {
        cell.label.reset();
        continue;
      }
      if (*cell.z > z_threshold) {
        cell.label = Expression::Over;
        ++s.bins_over;
      } else if (*cell.z < -z_threshold) {
        cell.label = Expression::Under;
        ++s.bins_under;
      } else {
        cell.label = Expression::Equal;
      }
    }
    s.over = s.bins_over > 0;
    s.under = s.bins_under > 0;
  }
}

}  // namespace convgraph
