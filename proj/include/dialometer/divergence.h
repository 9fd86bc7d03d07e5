#ifndef DIALOMETER_DIVERGENCE_H_
#define DIALOMETER_DIVERGENCE_H_

#include <array>
#include <map>
#include <optional>
#include <string_view>

#include "dialometer/textmetrics.h"

namespace dialometer {

enum class Metric { kH, kMO, kGRQ, kGR, kLRd };

inline constexpr std::array<Metric, 5> kAllMetrics = {Metric::kH, Metric::kMO, Metric::kGRQ,
                                                      Metric::kGR, Metric::kLRd};

std::string_view MetricName(Metric metric);

enum class Direction { kHigherBetter, kLowerBetter };

struct MetricSpec {
  Metric metric;
  Direction direction;
  std::optional<double> upper_bound;          // worst value of a LowerBetter metric
  std::optional<double> ideal_when_no_human;  // reference when no human value exists
};

const MetricSpec& SpecFor(Metric metric);

// Distance from the human anchor mapped onto [0, 1]; 0 is human-level.
//   HigherBetter: 1 - value / ref, ref = human value or the metric's ideal.
//   LowerBetter:  (value - human) / (upper_bound - human).
// Results are clamped to [0, 1].
double ScaleMetric(double value, const MetricSpec& spec, std::optional<double> human_value);

struct LdBreakdown {
  std::map<Metric, double> per_metric;  // only metrics that entered LD
  double ld = 0.0;
  int n_metrics_used = 0;
};

struct LdOptions {
  // Relative weight per metric; unlisted metrics weigh 1.
  std::map<Metric, double> weights;
};

std::optional<double> MetricValue(const MetricReport& report, Metric metric);

// Weighted mean of the scaled divergences of every metric present in both
// reports (LRd needs only the model side; it falls back to its ideal).
LdBreakdown LinguisticDivergence(const MetricReport& report, const MetricReport& human,
                                 const LdOptions& options = {});

}  // namespace dialometer

#endif  // DIALOMETER_DIVERGENCE_H_
