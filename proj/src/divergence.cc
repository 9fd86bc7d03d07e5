#include "dialometer/divergence.h"

#include <algorithm>

#include <fmt/format.h>

#include "dialometer/error.h"

namespace dialometer {

std::string_view MetricName(Metric metric) {
  switch (metric) {
    case Metric::kH: return "H";
    case Metric::kMO: return "MO";
    case Metric::kGRQ: return "GRQ";
    case Metric::kGR: return "GR";
    case Metric::kLRd: return "LRd";
  }
  return "?";
}

const MetricSpec& SpecFor(Metric metric) {
  static const std::array<MetricSpec, 5> kSpecs = {{
      {Metric::kH, Direction::kHigherBetter, std::nullopt, std::nullopt},
      {Metric::kMO, Direction::kLowerBetter, 1.0, std::nullopt},
      {Metric::kGRQ, Direction::kLowerBetter, 100.0, std::nullopt},
      {Metric::kGR, Direction::kHigherBetter, std::nullopt, std::nullopt},
      {Metric::kLRd, Direction::kHigherBetter, std::nullopt, 100.0},
  }};
  return kSpecs[static_cast<size_t>(metric)];
}

double ScaleMetric(double value, const MetricSpec& spec, std::optional<double> human_value) {
  const auto name = MetricName(spec.metric);
  double d = 0.0;
  if (spec.direction == Direction::kHigherBetter) {
    const std::optional<double> ref = human_value ? human_value : spec.ideal_when_no_human;
    if (!ref || !(*ref > 0.0)) {
      throw Error(ErrorCode::kMissingReference,
                  fmt::format("MissingReference: {} has no positive reference value", name));
    }
    d = 1.0 - value / *ref;
  } else {
    if (!human_value) {
      throw Error(ErrorCode::kMissingReference,
                  fmt::format("MissingReference: {} needs a human value", name));
    }
    if (!spec.upper_bound || !(*spec.upper_bound > *human_value)) {
      throw Error(ErrorCode::kDegenerateBounds,
                  fmt::format("DegenerateBounds: {} human value {} is not below its bound",
                              name, *human_value));
    }
    d = (value - *human_value) / (*spec.upper_bound - *human_value);
  }
  return std::clamp(d, 0.0, 1.0);
}

std::optional<double> MetricValue(const MetricReport& report, Metric metric) {
  switch (metric) {
    case Metric::kH: return report.h;
    case Metric::kMO: return report.mo;
    case Metric::kGRQ: return report.grq;
    case Metric::kGR: return report.gr;
    case Metric::kLRd: return report.lrd;
  }
  return std::nullopt;
}

LdBreakdown LinguisticDivergence(const MetricReport& report, const MetricReport& human,
                                 const LdOptions& options) {
  LdBreakdown out;
  double weighted = 0.0;
  double weight_total = 0.0;
  for (Metric metric : kAllMetrics) {
    const auto value = MetricValue(report, metric);
    if (!value) continue;
    const MetricSpec& spec = SpecFor(metric);
    const auto anchor = MetricValue(human, metric);
    if (!anchor && !spec.ideal_when_no_human) continue;
    const double d = ScaleMetric(*value, spec, anchor);
    double weight = 1.0;
    if (auto it = options.weights.find(metric); it != options.weights.end()) weight = it->second;
    if (weight <= 0.0) continue;
    out.per_metric[metric] = d;
    weighted += weight * d;
    weight_total += weight;
    ++out.n_metrics_used;
  }
  if (out.n_metrics_used == 0) {
    throw Error(ErrorCode::kNoCommonMetrics,
                fmt::format("NoCommonMetrics: {} and {} share no metric", report.corpus_id,
                            human.corpus_id));
  }
  out.ld = weighted / weight_total;
  return out;
}

}  // namespace dialometer
