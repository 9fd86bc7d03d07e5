#include "dialometer/divergence.h"

#include <gtest/gtest.h>

#include <random>

#include "common/published_rows.h"
#include "dialometer/error.h"

namespace dialometer {
namespace {

using testing::Report;

TEST(ScaleMetric, Examples) {
  EXPECT_NEAR(ScaleMetric(3.66, SpecFor(Metric::kH), 4.21), 0.131, 5e-4);
  for (Metric m : kAllMetrics) {
    EXPECT_EQ(ScaleMetric(0.5, SpecFor(m), 0.5), 0.0) << MetricName(m);
  }
  EXPECT_EQ(ScaleMetric(1.0, SpecFor(Metric::kMO), 0.03), 1.0);
  EXPECT_EQ(ScaleMetric(100.0, SpecFor(Metric::kLRd), std::nullopt), 0.0);
  EXPECT_DOUBLE_EQ(ScaleMetric(40.0, SpecFor(Metric::kLRd), std::nullopt), 0.6);
}

TEST(ScaleMetric, ClampsSystemsBeatingHumans) {
  EXPECT_EQ(ScaleMetric(5.0, SpecFor(Metric::kH), 4.21), 0.0);
  EXPECT_EQ(ScaleMetric(0.01, SpecFor(Metric::kMO), 0.03), 0.0);
  EXPECT_EQ(ScaleMetric(-1.0, SpecFor(Metric::kGR), 10.0), 1.0);
}

TEST(ScaleMetric, Errors) {
  try {
    ScaleMetric(3.0, SpecFor(Metric::kH), std::nullopt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingReference);
  }
  try {
    ScaleMetric(0.5, SpecFor(Metric::kMO), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateBounds);
  }
  EXPECT_THROW(ScaleMetric(3.0, SpecFor(Metric::kH), 0.0), Error);
}

TEST(LinguisticDivergence, PublishedColumn) {
  for (const auto& row : testing::PublishedRows()) {
    const MetricReport r = Report(row.system, row.gr, row.lrd, row.mo, row.grq, row.h);
    const LdBreakdown ld = LinguisticDivergence(r, testing::AnchorFor(row.anchor));
    EXPECT_NEAR(ld.ld, row.ld, 0.01) << row.system;
  }
}

TEST(LinguisticDivergence, DynoNetUsesTwoMetrics) {
  const LdBreakdown ld = LinguisticDivergence(
      Report("d", 51.15, std::nullopt, std::nullopt, std::nullopt, 3.91),
      testing::MutualFriendsHuman());
  EXPECT_EQ(ld.n_metrics_used, 2);
  EXPECT_EQ(ld.per_metric.count(Metric::kGR), 1u);
  EXPECT_EQ(ld.per_metric.count(Metric::kH), 1u);
}

TEST(LinguisticDivergence, HumanAgainstItselfIsZero) {
  for (MetricReport human :
       {testing::GuessWhatHuman(), testing::GuessWhichHuman(), testing::MutualFriendsHuman()}) {
    human.lrd = 100.0;  // self-comparison pins LRd to its ideal
    const LdBreakdown ld = LinguisticDivergence(human, human);
    EXPECT_EQ(ld.ld, 0.0);
  }
}

TEST(LinguisticDivergence, NoCommonMetrics) {
  try {
    LinguisticDivergence(Report("x", std::nullopt, std::nullopt, 0.2, std::nullopt, std::nullopt),
                         Report("h", 50.0, std::nullopt, std::nullopt, std::nullopt, 4.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoCommonMetrics);
  }
}

TEST(LinguisticDivergence, Weights) {
  const MetricReport r = Report("x", 36.49, 50.0, std::nullopt, std::nullopt, 4.21);
  const MetricReport h = testing::GuessWhatHuman();
  // GR 0.5, LRd 0.5, H 0.
  EXPECT_NEAR(LinguisticDivergence(r, h).ld, 1.0 / 3.0, 1e-9);
  LdOptions options;
  options.weights[Metric::kH] = 2.0;
  EXPECT_NEAR(LinguisticDivergence(r, h, options).ld, 0.25, 1e-9);
}

TEST(LinguisticDivergence, PropertyMonotoneAndBounded) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const MetricReport h = testing::GuessWhatHuman();
  for (int i = 0; i < 500; ++i) {
    MetricReport r = Report("x", 100 * u(rng), 100 * u(rng), u(rng), 100 * u(rng), 5 * u(rng));
    const double base = LinguisticDivergence(r, h).ld;
    EXPECT_GE(base, 0.0);
    EXPECT_LE(base, 1.0);
    MetricReport worse = r;
    worse.mo = std::min(1.0, *r.mo + 0.1);
    worse.grq = std::min(100.0, *r.grq + 5.0);
    EXPECT_GE(LinguisticDivergence(worse, h).ld, base);
    MetricReport better = r;
    better.h = *r.h + 0.2;
    better.gr = std::min(100.0, *r.gr + 5.0);
    better.lrd = std::min(100.0, *r.lrd + 5.0);
    EXPECT_LE(LinguisticDivergence(better, h).ld, base);
  }
}

}  // namespace
}  // namespace dialometer
