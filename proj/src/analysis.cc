#include "dialometer/analysis.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <unordered_map>

#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include "dialometer/error.h"
#include "dialometer/parallel.h"

namespace dialometer {
namespace {

bool InRareScope(const Turn& turn, const RareWords& rare) {
  return InScope(turn.speaker, rare.scope);
}

int64_t RareOccurrences(const GameRecord& game, const RareWords& rare) {
  int64_t n = 0;
  for (const auto& turn : game.turns) {
    if (!InRareScope(turn, rare)) continue;
    for (const auto& token : turn.tokens) n += rare.words.count(token);
  }
  return n;
}

// Outcome per human record index; AlignmentError for unknown or repeated games.
std::vector<const GameOutcome*> AlignOutcomes(const Corpus& human,
                                              std::span<const GameOutcome> outcomes) {
  std::vector<const GameOutcome*> aligned(human.size(), nullptr);
  for (const auto& o : outcomes) {
    const auto index = human.Find(o.game_id);
    if (!index) {
      throw Error(ErrorCode::kAlignment,
                  fmt::format("AlignmentError: outcome for {} has no game in {}", o.game_id,
                              human.id()));
    }
    if (aligned[*index] != nullptr) {
      throw Error(ErrorCode::kAlignment,
                  fmt::format("AlignmentError: more than one outcome for {}", o.game_id));
    }
    aligned[*index] = &o;
  }
  return aligned;
}

struct Mean {
  double sum = 0.0;
  size_t n = 0;

  void Add(double v) {
    sum += v;
    ++n;
  }
  std::optional<double> Get() const {
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
  }
};

std::optional<double> Percent(size_t part, size_t whole) {
  if (whole == 0) return std::nullopt;
  return 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

}  // namespace

std::vector<double> MidRanks(std::span<const double> values) {
  std::vector<size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (size_t i = 0; i < order.size();) {
    size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double mid = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = mid;
    i = j + 1;
  }
  return ranks;
}

SpearmanResult Spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                fmt::format("LengthMismatch: {} vs {} values", xs.size(), ys.size()));
  }
  const size_t n = xs.size();
  if (n < 3) {
    throw Error(ErrorCode::kTooFewPoints, fmt::format("TooFewPoints: {} pairs, need 3", n));
  }
  const auto rx = MidRanks(xs);
  const auto ry = MidRanks(ys);
  const double mean = (static_cast<double>(n) + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::kConstantInput, "ConstantInput: rank correlation is undefined");
  }
  SpearmanResult result;
  result.rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double rest = 1.0 - result.rho * result.rho;
  if (rest <= 0.0) {
    result.p_value = 0.0;
    return result;
  }
  const double df = static_cast<double>(n) - 2.0;
  const double t = std::abs(result.rho) * std::sqrt(df / rest);
  const boost::math::students_t dist(df);
  result.p_value = std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, t)), 0.0, 1.0);
  return result;
}

RareWords RareWordSet(const Vocabulary& train_vocab, int threshold) {
  if (threshold < 1) {
    throw Error(ErrorCode::kInvalidArgument, "rare-word threshold must be at least 1");
  }
  RareWords rare;
  rare.threshold = threshold;
  rare.vocab_size = train_vocab.size();
  rare.scope = train_vocab.scope();
  for (const auto& entry : train_vocab.entries()) {
    if (entry.count < threshold) rare.words.insert(entry.token);
  }
  return rare;
}

RareWordReport BuildRareWordReport(const Corpus& human, const Corpus* generated,
                                   const RareWords& rare, std::span<const GameOutcome> outcomes) {
  RareWordReport report;
  report.threshold = rare.threshold;
  report.rare_set_size = rare.words.size();
  report.rare_fraction_of_vocab = Percent(rare.words.size(), rare.vocab_size).value_or(0.0);
  report.n_games = human.size();

  const auto aligned = AlignOutcomes(human, outcomes);
  size_t games_with_rare = 0;
  Mean turns_with, turns_without;
  size_t correct_all = 0, judged_all = 0;
  size_t correct_with = 0, judged_with = 0;
  size_t correct_without = 0, judged_without = 0;
  int64_t rare_in_judged = 0, rare_in_failed = 0;
  std::map<std::string, int64_t> pos_counts;
  int64_t tagged = 0;

  for (size_t index : human.IdOrder()) {
    const GameRecord& game = human.records()[index];
    const int64_t occurrences = RareOccurrences(game, rare);
    report.rare_occurrences += occurrences;
    const bool has_rare = occurrences > 0;
    const auto turns = static_cast<double>(game.QuestionCount());
    if (has_rare) {
      ++games_with_rare;
      turns_with.Add(turns);
    } else {
      turns_without.Add(turns);
    }

    for (const auto& turn : game.turns) {
      if (!turn.pos_tags || !InRareScope(turn, rare)) continue;
      for (size_t i = 0; i < turn.tokens.size(); ++i) {
        if (rare.words.count(turn.tokens[i])) {
          ++pos_counts[(*turn.pos_tags)[i]];
          ++tagged;
        }
      }
    }

    const GameOutcome* outcome = aligned[index];
    if (outcome == nullptr || !outcome->correct) continue;
    const bool correct = *outcome->correct;
    ++judged_all;
    correct_all += correct;
    if (has_rare) {
      ++judged_with;
      correct_with += correct;
    } else {
      ++judged_without;
      correct_without += correct;
    }
    rare_in_judged += occurrences;
    if (!correct) rare_in_failed += occurrences;
  }

  report.games_with_rare = Percent(games_with_rare, human.size()).value_or(0.0);
  report.mean_turns_with_rare = turns_with.Get();
  report.mean_turns_without_rare = turns_without.Get();
  report.acc_overall = Percent(correct_all, judged_all);
  report.acc_with_rare = Percent(correct_with, judged_with);
  report.acc_without_rare = Percent(correct_without, judged_without);
  if (rare_in_judged > 0) {
    report.rare_words_in_failed_games =
        100.0 * static_cast<double>(rare_in_failed) / static_cast<double>(rare_in_judged);
  }
  if (generated != nullptr && !rare.words.empty()) {
    const auto used = TokenTypes(*generated, rare.scope);
    size_t hit = 0;
    for (const auto& w : rare.words) hit += used.count(w);
    report.rare_used_by_generated = Percent(hit, rare.words.size());
  }
  if (tagged > 0) {
    std::map<std::string, double> distribution;
    for (const auto& [tag, count] : pos_counts) {
      distribution[tag] = 100.0 * static_cast<double>(count) / static_cast<double>(tagged);
    }
    report.pos_distribution = std::move(distribution);
  }
  return report;
}

std::vector<int> DefaultBucketEdges() { return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}; }

std::vector<DifficultyBucket> DifficultyBuckets(const Corpus& human, const RareWords& rare,
                                                std::span<const GameOutcome> outcomes,
                                                std::span<const int> edges,
                                                bool require_distractor_stats) {
  if (edges.empty() || edges.front() < 0 ||
      std::adjacent_find(edges.begin(), edges.end(), std::greater_equal<>()) != edges.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "bucket edges must be non-negative and strictly increasing");
  }
  const auto aligned = AlignOutcomes(human, outcomes);
  const size_t n_buckets = edges.size();
  std::vector<DifficultyBucket> buckets(n_buckets);
  std::vector<Mean> distractors(n_buckets), same_category(n_buckets), rare_words(n_buckets);
  std::vector<size_t> correct(n_buckets), judged(n_buckets);
  for (size_t b = 0; b < n_buckets; ++b) {
    buckets[b].min_turns = edges[b];
    if (b + 1 < n_buckets) buckets[b].max_turns = edges[b + 1] - 1;
  }

  for (size_t index : human.IdOrder()) {
    const GameRecord& game = human.records()[index];
    if (game.candidates.empty() && require_distractor_stats) {
      throw Error(ErrorCode::kMissingCandidates,
                  fmt::format("MissingCandidates: game {} has no candidates", game.game_id));
    }
    const int turns = game.QuestionCount();
    if (turns < edges.front()) continue;
    const size_t b =
        static_cast<size_t>(std::upper_bound(edges.begin(), edges.end(), turns) - edges.begin()) -
        1;
    ++buckets[b].n_games;
    rare_words[b].Add(static_cast<double>(RareOccurrences(game, rare)));
    if (!game.candidates.empty()) {
      distractors[b].Add(static_cast<double>(game.candidates.size()) - 1.0);
      const Candidate* target = game.Target();
      if (target != nullptr && target->category) {
        const auto same = std::count_if(
            game.candidates.begin(), game.candidates.end(),
            [&](const Candidate& c) { return c.category == target->category; });
        same_category[b].Add(static_cast<double>(same) - 1.0);
      }
    }
    if (const GameOutcome* o = aligned[index]; o != nullptr && o->correct) {
      ++judged[b];
      correct[b] += *o->correct;
    }
  }

  for (size_t b = 0; b < n_buckets; ++b) {
    buckets[b].mean_distractors = distractors[b].Get();
    buckets[b].mean_same_category_distractors = same_category[b].Get();
    buckets[b].mean_rare_words = rare_words[b].Get();
    buckets[b].accuracy = Percent(correct[b], judged[b]);
  }
  return buckets;
}

const std::vector<std::string>& TrackMetricNames() {
  static const std::vector<std::string> kNames = {"H", "MO", "GRQ", "GR", "LRd", "LD", "TS"};
  return kNames;
}

MetricTrack NormalizeTrack(std::string label, const std::vector<StepValues>& steps) {
  std::map<std::string, double> max_value;
  for (const auto& step : steps) {
    for (const auto& [metric, value] : step.values) {
      auto [it, inserted] = max_value.emplace(metric, value);
      if (!inserted) it->second = std::max(it->second, value);
    }
  }
  MetricTrack track;
  track.label = std::move(label);
  for (const auto& step : steps) {
    for (const auto& metric : TrackMetricNames()) {
      auto it = step.values.find(metric);
      if (it == step.values.end()) continue;
      const double top = max_value[metric];
      const double normalized = top > 0.0 ? it->second / top : 1.0;
      track.points.push_back({step.step, metric, it->second, normalized});
    }
  }
  return track;
}

std::vector<ManifestEntry> ParseManifest(std::istream& in, const std::filesystem::path& base_dir,
                                         std::string_view source_name) {
  std::vector<ManifestEntry> entries;
  std::string line;
  size_t line_no = 0;
  auto resolve = [&base_dir](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
      const size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() < 2 || fields.size() > 3 || fields[0].empty() || fields[1].empty()) {
      throw Error(ErrorCode::kMalformedLine,
                  fmt::format("{}:{}: MalformedLine({}): expected step<TAB>corpus[<TAB>outcomes]",
                              source_name, line_no, line_no));
    }
    ManifestEntry entry{fields[0], resolve(fields[1]), std::nullopt};
    if (fields.size() == 3 && !fields[2].empty()) entry.outcomes_path = resolve(fields[2]);
    entries.push_back(std::move(entry));
  }
  return entries;
}

StepValues EvaluateStep(const std::string& step, const Corpus& corpus,
                        const OutcomeSet* outcomes, const TrackAnchors& anchors,
                        const MetricReport* human_report, const TrackOptions& options) {
  const StopwordSet& stopwords =
      anchors.stopwords != nullptr ? *anchors.stopwords : DefaultStopwords();
  EvalOptions eval = options.eval;
  eval.jobs = 1;
  const MetricReport report =
      EvaluateCorpus(corpus, anchors.human, anchors.train_vocab, stopwords, eval);
  StepValues values{step, {}};
  for (Metric metric : kAllMetrics) {
    if (auto v = MetricValue(report, metric)) values.values[std::string(MetricName(metric))] = *v;
  }
  if (human_report != nullptr) {
    values.values["LD"] = LinguisticDivergence(report, *human_report, options.ld).ld;
  }
  if (outcomes != nullptr && !outcomes->games.empty()) {
    const auto& games = outcomes->games;
    const bool all_correct =
        std::all_of(games.begin(), games.end(), [](const GameOutcome& o) { return o.correct; });
    values.values["TS"] =
        all_correct ? Accuracy(games) : MeanPercentileRank(games, options.percentile_base);
  }
  return values;
}

MetricTrack BuildMetricTrack(std::string label, const std::vector<ManifestEntry>& manifest,
                             const TrackAnchors& anchors, const TrackOptions& options) {
  if (manifest.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("a metric track needs at least 2 steps, got {}", manifest.size()));
  }
  std::optional<MetricReport> human_report;
  if (anchors.human != nullptr) {
    const StopwordSet& stopwords =
        anchors.stopwords != nullptr ? *anchors.stopwords : DefaultStopwords();
    human_report = EvaluateCorpus(*anchors.human, nullptr, anchors.train_vocab, stopwords,
                                  options.eval);
  }
  std::vector<StepValues> steps(manifest.size());
  ParallelFor(manifest.size(), options.jobs, [&](size_t i) {
    const ManifestEntry& entry = manifest[i];
    try {
      const Corpus corpus = LoadCorpus(entry.corpus_path, options.tokenizer, options.status);
      std::optional<OutcomeSet> outcomes;
      if (entry.outcomes_path) outcomes = LoadOutcomes(*entry.outcomes_path);
      steps[i] = EvaluateStep(entry.step, corpus, outcomes ? &*outcomes : nullptr, anchors,
                              human_report ? &*human_report : nullptr, options);
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("step {}: {}", entry.step, e.what()));
    }
  });
  return NormalizeTrack(std::move(label), steps);
}

}  // namespace dialometer
