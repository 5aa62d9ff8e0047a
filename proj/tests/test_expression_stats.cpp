#include <gtest/gtest.h>

#include <cmath>

#include "convgraph/error.hpp"
#include "convgraph/expression_stats.hpp"
#include "generators.hpp"

namespace convgraph {
namespace {

MotifCensus counts_with(std::size_t n_users, ClassId cls, std::uint64_t count) {
  MotifCensus c;
  c.n_users = n_users;
  c.counts[cls] = count;
  return c;
}

ZReport compare(const std::vector<MotifCensus>& focus, const std::vector<MotifCensus>& baseline,
                const BinSpec& spec = BinSpec()) {
  ZReport r = z_scores(assign_bins(focus, spec), fit_null_model(assign_bins(baseline, spec)));
  classify_expression(r);
  return r;
}

TEST(BinSpec, DefaultBoundaries) {
  BinSpec spec;
  EXPECT_EQ(spec.size(), 8u);
  EXPECT_EQ(spec.find(0), std::nullopt);
  EXPECT_EQ(spec.find(1), std::optional<std::size_t>(0));
  EXPECT_EQ(spec.find(5), std::optional<std::size_t>(0));
  EXPECT_EQ(spec.find(6), std::optional<std::size_t>(1));
  EXPECT_EQ(spec.find(40), std::optional<std::size_t>(7));
  EXPECT_EQ(spec.find(41), std::nullopt);
  EXPECT_EQ(spec.ranges()[1].label(), "6-10");
  EXPECT_EQ(BinSpec::parse(spec.to_string()).to_string(), spec.to_string());
}

TEST(BinSpec, ParseAndValidate) {
  BinSpec s = BinSpec::parse("3-3,4-9");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.ranges()[1], (BinRange{4, 9}));
  for (const char* bad : {"", "5", "5-", "a-b", "5-3", "1-5,5-9", "6-10,1-5", "1-5,,6-7"}) {
    EXPECT_THROW(BinSpec::parse(bad), InvalidArgument) << bad;
  }
}

TEST(AssignBins, CountsUnbinned) {
  std::vector<MotifCensus> cs = {counts_with(3, 0, 1), counts_with(50, 0, 1), counts_with(7, 0, 1)};
  BinnedGroups g = assign_bins(cs, BinSpec());
  EXPECT_EQ(g.bins[0].size(), 1u);
  EXPECT_EQ(g.bins[1].size(), 1u);
  EXPECT_EQ(g.unbinned, 1u);
}

TEST(NullModel, PopulationMoments) {
  const ClassId c = 5;
  NullModel flat = fit_null_model(
      assign_bins(std::vector<MotifCensus>{counts_with(3, c, 2), counts_with(3, c, 2), counts_with(4, c, 2)},
                  BinSpec()));
  EXPECT_EQ(flat.bins[0].graphs, 3u);
  EXPECT_DOUBLE_EQ(flat.bins[0].stats[c].mean, 2.0);
  EXPECT_DOUBLE_EQ(flat.bins[0].stats[c].stddev, 0.0);

  NullModel spread = fit_null_model(
      assign_bins(std::vector<MotifCensus>{counts_with(3, c, 0), counts_with(3, c, 4)}, BinSpec()));
  EXPECT_DOUBLE_EQ(spread.bins[0].stats[c].mean, 2.0);
  EXPECT_DOUBLE_EQ(spread.bins[0].stats[c].stddev, 2.0);
  EXPECT_TRUE(spread.bins[1].empty());
}

TEST(ZScores, WorkedExample) {
  const ClassId c = 7;
  ZReport r = compare({counts_with(3, c, 6), counts_with(4, c, 6)}, {counts_with(3, c, 0), counts_with(3, c, 4)});
  const ZCell& cell = r.cell(0, c);
  ASSERT_TRUE(cell.z.has_value());
  EXPECT_DOUBLE_EQ(*cell.z, 2.0);
  EXPECT_EQ(cell.baseline_graphs, 2u);
  EXPECT_EQ(cell.focus_graphs, 2u);
  EXPECT_DOUBLE_EQ(cell.se_null, 2.0 / std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(cell.sigma_focus, 0.0);
  EXPECT_DOUBLE_EQ(cell.se_focus, 0.0);
  EXPECT_TRUE(cell.reason.empty());
}

TEST(ZScores, UndefinedCellsCarryReasons) {
  const ClassId c = 7;
  // Baseline only in bin 0, focus in bins 0 and 1; the baseline has no
  // spread for any class other than c.
  ZReport r = compare({counts_with(3, c, 6), counts_with(8, c, 1)}, {counts_with(3, c, 0), counts_with(3, c, 4)});
  EXPECT_FALSE(r.cell(0, 0).z.has_value());
  EXPECT_EQ(r.cell(0, 0).reason, kReasonZeroVariance);
  EXPECT_FALSE(r.cell(1, c).z.has_value());
  EXPECT_EQ(r.cell(1, c).reason, kReasonEmptyBaseline);
  EXPECT_FALSE(r.cell(2, c).z.has_value());
  EXPECT_EQ(r.cell(2, c).reason, kReasonEmptyBaseline);

  ZReport no_focus = compare({}, {counts_with(3, c, 0), counts_with(3, c, 40)});
  EXPECT_EQ(no_focus.cell(0, c).reason, kReasonEmptyFocus);
  EXPECT_FALSE(no_focus.cell(0, c).label.has_value());
}

TEST(ZScores, MismatchedBinsRejected) {
  BinnedGroups focus = assign_bins(std::vector<MotifCensus>{}, BinSpec::parse("1-5"));
  NullModel null = fit_null_model(assign_bins(std::vector<MotifCensus>{}, BinSpec()));
  EXPECT_THROW(z_scores(focus, null), InvalidArgument);
}

std::vector<MotifCensus> random_corpus(testkit::Rng& rng, std::size_t size) {
  std::vector<MotifCensus> out;
  for (std::size_t i = 0; i < size; ++i) {
    MotifCensus c;
    c.n_users = 1 + rng() % 40;
    for (auto& x : c.counts) x = rng() % 30;
    out.push_back(c);
  }
  return out;
}

TEST(ZScores, SelfComparisonIsZeroWhereDefined) {
  testkit::Rng rng(12);
  auto corpus = random_corpus(rng, 400);
  ZReport r = compare(corpus, corpus);
  for (const ZCell& cell : r.cells) {
    if (cell.z) EXPECT_NEAR(*cell.z, 0.0, 1e-12);
    if (cell.has_baseline()) EXPECT_EQ(cell.focus_graphs, cell.baseline_graphs);
  }
}

// Z depends only on standardised counts: shifting or scaling one class in
// both corpora by the same affine map leaves it unchanged.
TEST(ZScores, InvariantUnderSharedAffineMap) {
  testkit::Rng rng(19);
  auto focus = random_corpus(rng, 300);
  auto baseline = random_corpus(rng, 300);
  ZReport base = compare(focus, baseline);
  for (std::uint64_t scale : {1u, 3u}) {
    for (std::uint64_t shift : {0u, 17u}) {
      auto f = focus, b = baseline;
      for (auto* corpus : {&f, &b}) {
        for (MotifCensus& c : *corpus) {
          for (auto& x : c.counts) x = scale * x + shift;
        }
      }
      ZReport moved = compare(f, b);
      for (std::size_t i = 0; i < base.cells.size(); ++i) {
        ASSERT_EQ(base.cells[i].z.has_value(), moved.cells[i].z.has_value());
        if (base.cells[i].z) EXPECT_NEAR(*base.cells[i].z, *moved.cells[i].z, 1e-9);
      }
    }
  }
}

TEST(ClassifyExpression, Rules) {
  const ClassId c = 10;
  std::vector<MotifCensus> baseline, focus_hi, focus_lo, focus_eq;
  for (int i = 0; i < 10; ++i) baseline.push_back(counts_with(3, c, i % 2 ? 16 : 12));  // mu 14, sigma 2
  for (int i = 0; i < 5; ++i) {
    focus_hi.push_back(counts_with(3, c, 20));
    focus_lo.push_back(counts_with(3, c, 8));
    focus_eq.push_back(counts_with(3, c, 15));
  }
  EXPECT_EQ(compare(focus_hi, baseline).cell(0, c).label, std::optional(Expression::Over));
  EXPECT_EQ(compare(focus_lo, baseline).cell(0, c).label, std::optional(Expression::Under));
  EXPECT_EQ(compare(focus_eq, baseline).cell(0, c).label, std::optional(Expression::Equal));
  EXPECT_EQ(compare(focus_hi, baseline).summary[c].label(), "over");
  EXPECT_EQ(compare(focus_lo, baseline).summary[c].label(), "under");
  EXPECT_EQ(compare(focus_eq, baseline).summary[c].label(), "equal");

  // Over in one bin and under in another.
  auto mixed_base = baseline;
  for (int i = 0; i < 10; ++i) mixed_base.push_back(counts_with(8, c, i % 2 ? 16 : 12));
  std::vector<MotifCensus> mixed_focus = focus_hi;
  for (int i = 0; i < 5; ++i) mixed_focus.push_back(counts_with(8, c, 8));
  ClassExpression e = compare(mixed_focus, mixed_base).summary[c];
  EXPECT_EQ(e.label(), "over+under");
  EXPECT_EQ(e.bins_over, 1u);
  EXPECT_EQ(e.bins_under, 1u);
  EXPECT_DOUBLE_EQ(e.max_mean, 20.0);
}

TEST(ClassifyExpression, RareClassesIgnoreZ) {
  const ClassId c = 3;
  std::vector<MotifCensus> baseline = {counts_with(3, c, 0), counts_with(3, c, 2)};
  std::vector<MotifCensus> focus = {counts_with(3, c, 9), counts_with(3, c, 9)};
  ZReport r = compare(focus, baseline);
  ASSERT_TRUE(r.cell(0, c).z.has_value());
  EXPECT_GT(*r.cell(0, c).z, 1.0);
  EXPECT_EQ(r.cell(0, c).label, std::optional(Expression::Rare));
  EXPECT_TRUE(r.summary[c].rare);
  EXPECT_EQ(r.summary[c].label(), "rare");

  // The threshold is strict: a bin mean of exactly 10 is still rare.
  focus = {counts_with(3, c, 10)};
  EXPECT_EQ(compare(focus, baseline).summary[c].label(), "rare");
  focus = {counts_with(3, c, 11)};
  EXPECT_EQ(compare(focus, baseline).summary[c].label(), "over");
}

}  // namespace
}  // namespace convgraph
