#ifndef DIALOMETER_REPORT_H_
#define DIALOMETER_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "dialometer/analysis.h"
#include "dialometer/bleu.h"
#include "dialometer/corpus.h"
#include "dialometer/divergence.h"
#include "dialometer/tasksuccess.h"
#include "dialometer/textmetrics.h"

namespace dialometer {

inline constexpr int kSchemaVersion = 1;

// Everything that changes command output, echoed into every report.
struct RunConfig {
  TokenizerConfig tokenizer;
  std::optional<std::string> stopword_path;
  BleuConfig bleu;
  int rare_threshold = kDefaultRareThreshold;
  SpeakerScope scope = SpeakerScope::kQuestionerOnly;
  // Unset means: every status for generated corpora, played games for
  // human corpora.
  std::optional<StatusFilter> status_filter;
  // Empty means the command default (json, or csv for zipf and curves).
  std::string output_format;
  uint64_t seed = 0;
  PercentileBase percentile_base = PercentileBase::kCandidates;
  std::string task = "default";
};

// Applies one `key = value` setting; throws InvalidArgument on a bad key or
// value.
void ApplyConfigSetting(RunConfig& config, std::string_view key, std::string_view value);
// Key-value text, '#' comments and blank lines allowed.
void ApplyConfigText(RunConfig& config, std::string_view text, std::string_view source_name);
void ApplyConfigFile(RunConfig& config, const std::filesystem::path& path);

StatusFilter GeneratedStatusFilter(const RunConfig& config);
StatusFilter HumanStatusFilter(const RunConfig& config);

// Rounds to `digits` significant decimal digits.
double RoundSignificant(double value, int digits = 6);
// "%.6g"-style text for CSV cells.
std::string FormatNumber(double value);

std::string Sha256Hex(const std::filesystem::path& path);

nlohmann::json ToJson(const RunConfig& config);
nlohmann::json ToJson(const MetricReport& report);
nlohmann::json ToJson(const LdBreakdown& breakdown);
nlohmann::json ToJson(const RareWordReport& report);
nlohmann::json ToJson(const DifficultyBucket& bucket);
nlohmann::json ToJson(const std::vector<CurvePoint>& curve);

// Reads the "corpus"/"human" section of a report. Throws Schema on a
// malformed object.
MetricReport MetricReportFromJson(const nlohmann::json& j);

}  // namespace dialometer

#endif  // DIALOMETER_REPORT_H_
