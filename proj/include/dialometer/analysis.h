#ifndef DIALOMETER_ANALYSIS_H_
#define DIALOMETER_ANALYSIS_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "dialometer/corpus.h"
#include "dialometer/divergence.h"
#include "dialometer/tasksuccess.h"
#include "dialometer/textmetrics.h"
#include "dialometer/vocabulary.h"

namespace dialometer {

struct SpearmanResult {
  double rho = 0.0;
  double p_value = 1.0;  // two-sided, Student t approximation
};

// Mid-ranks with ties averaged, 1-based.
std::vector<double> MidRanks(std::span<const double> values);

SpearmanResult Spearman(std::span<const double> xs, std::span<const double> ys);

inline constexpr int kDefaultRareThreshold = 15;

struct RareWords {
  std::unordered_set<std::string> words;
  int threshold = kDefaultRareThreshold;
  size_t vocab_size = 0;
  SpeakerScope scope = SpeakerScope::kQuestionerOnly;
};

// Training words seen fewer than `threshold` times.
RareWords RareWordSet(const Vocabulary& train_vocab, int threshold = kDefaultRareThreshold);

struct RareWordReport {
  int threshold = 0;
  size_t rare_set_size = 0;
  double rare_fraction_of_vocab = 0.0;
  size_t n_games = 0;
  double games_with_rare = 0.0;
  int64_t rare_occurrences = 0;
  std::optional<double> mean_turns_with_rare;
  std::optional<double> mean_turns_without_rare;
  std::optional<double> acc_overall;
  std::optional<double> acc_with_rare;
  std::optional<double> acc_without_rare;
  // Share of rare-token occurrences that sit in games the model failed.
  std::optional<double> rare_words_in_failed_games;
  // Share of the rare set the generated corpus uses.
  std::optional<double> rare_used_by_generated;
  std::optional<std::map<std::string, double>> pos_distribution;
};

// Turn counts are questioner turns. Outcomes (may be empty) align to the
// human games by game_id; an outcome for an unknown game is an
// AlignmentError.
RareWordReport BuildRareWordReport(const Corpus& human, const Corpus* generated,
                                   const RareWords& rare,
                                   std::span<const GameOutcome> outcomes = {});

struct DifficultyBucket {
  int min_turns = 0;
  std::optional<int> max_turns;  // open-ended when absent
  size_t n_games = 0;
  std::optional<double> mean_distractors;
  std::optional<double> mean_same_category_distractors;
  std::optional<double> mean_rare_words;
  std::optional<double> accuracy;
};

// One bucket per turn count 1..9 and a final 10+ bucket.
std::vector<int> DefaultBucketEdges();

// Bucket i holds games whose question count is in [edges[i], edges[i+1]);
// the last bucket is open. Games below edges[0] are left out.
std::vector<DifficultyBucket> DifficultyBuckets(const Corpus& human, const RareWords& rare,
                                                std::span<const GameOutcome> outcomes,
                                                std::span<const int> edges,
                                                bool require_distractor_stats = false);

struct TrackPoint {
  std::string step;
  std::string metric;
  double raw = 0.0;
  double normalized = 0.0;
};

struct MetricTrack {
  std::string label;
  std::vector<TrackPoint> points;  // step-major, metric order fixed
};

struct StepValues {
  std::string step;
  std::map<std::string, double> values;
};

// Metric order used in tracks.
const std::vector<std::string>& TrackMetricNames();

// Normalizes every metric by its maximum over the steps; a metric whose
// values are all zero normalizes to 1.
MetricTrack NormalizeTrack(std::string label, const std::vector<StepValues>& steps);

struct ManifestEntry {
  std::string step;
  std::filesystem::path corpus_path;
  std::optional<std::filesystem::path> outcomes_path;
};

// TSV lines: step, corpus path, optional outcomes path. Relative paths are
// resolved against `base_dir`. Blank lines and '#' comments are skipped.
std::vector<ManifestEntry> ParseManifest(std::istream& in, const std::filesystem::path& base_dir,
                                         std::string_view source_name = "<manifest>");

struct TrackAnchors {
  const Corpus* human = nullptr;
  const Vocabulary* train_vocab = nullptr;
  const StopwordSet* stopwords = nullptr;
};

struct TrackOptions {
  EvalOptions eval;
  TokenizerConfig tokenizer;
  StatusFilter status = StatusFilter::All();
  PercentileBase percentile_base = PercentileBase::kCandidates;
  LdOptions ld;
  int jobs = 1;
};

// Values for one step: H, MO, GRQ, plus GR / LRd / LD / TS when the anchors
// and outcomes allow. `human_report` is the anchor for LD.
StepValues EvaluateStep(const std::string& step, const Corpus& corpus,
                        const OutcomeSet* outcomes, const TrackAnchors& anchors,
                        const MetricReport* human_report, const TrackOptions& options);

// Needs at least two steps. Load and metric errors are rethrown with the step
// label in the message.
MetricTrack BuildMetricTrack(std::string label, const std::vector<ManifestEntry>& manifest,
                             const TrackAnchors& anchors, const TrackOptions& options);

}  // namespace dialometer

#endif  // DIALOMETER_ANALYSIS_H_
