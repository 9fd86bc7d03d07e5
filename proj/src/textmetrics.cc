#include "dialometer/textmetrics.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

#include "dialometer/error.h"
#include "dialometer/parallel.h"

namespace dialometer {
namespace {

std::vector<const TokenList*> QuestionTokens(const GameRecord& dialogue) {
  std::vector<const TokenList*> questions;
  for (const auto& turn : dialogue.turns) {
    if (turn.speaker == Speaker::kQuestioner) questions.push_back(&turn.tokens);
  }
  return questions;
}

std::set<std::string> QuestionContentWords(const GameRecord& dialogue,
                                           const StopwordSet& stopwords) {
  std::set<std::string> words;
  for (const auto& turn : dialogue.turns) {
    if (turn.speaker != Speaker::kQuestioner) continue;
    auto part = ContentWords(turn.tokens, stopwords);
    words.insert(part.begin(), part.end());
  }
  return words;
}

// Sums per-record values in game_id order.
double SumInIdOrder(const Corpus& corpus, const std::vector<double>& values) {
  double sum = 0.0;
  for (size_t index : corpus.IdOrder()) sum += values[index];
  return sum;
}

void RequireNonEmpty(const Corpus& corpus) {
  if (corpus.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, fmt::format("EmptyCorpus: {} has no dialogues", corpus.id()));
  }
}

}  // namespace

double UnigramEntropy(const Corpus& corpus, SpeakerScope scope) {
  const auto counts = CountTokens(corpus, scope);
  if (counts.empty()) {
    throw Error(ErrorCode::kEmptyScope,
                fmt::format("EmptyScope: corpus {} has no {} tokens", corpus.id(),
                            SpeakerScopeName(scope)));
  }
  // Summation in rank order keeps the result independent of hash order.
  const Vocabulary ordered(counts, scope);
  const auto total = static_cast<double>(ordered.total_tokens());
  double h = 0.0;
  for (const auto& entry : ordered.entries()) {
    const double p = static_cast<double>(entry.count) / total;
    h -= p * std::log2(p);
  }
  return std::max(0.0, h);
}

double MutualOverlap(const GameRecord& dialogue, const BleuConfig& bleu) {
  const auto questions = QuestionTokens(dialogue);
  if (questions.empty()) {
    throw Error(ErrorCode::kNoQuestions,
                fmt::format("NoQuestions: game {} has no questioner turns", dialogue.game_id));
  }
  if (questions.size() == 1) return 0.0;

  std::unordered_map<std::string_view, uint32_t> ids;
  std::vector<NgramProfile> profiles;
  profiles.reserve(questions.size());
  std::vector<uint32_t> seq;
  for (const TokenList* q : questions) {
    seq.clear();
    for (const auto& t : *q) {
      seq.push_back(ids.emplace(t, static_cast<uint32_t>(ids.size())).first->second);
    }
    profiles.emplace_back(seq);
  }

  std::vector<const NgramProfile*> refs;
  refs.reserve(questions.size() - 1);
  double sum = 0.0;
  for (size_t i = 0; i < profiles.size(); ++i) {
    if (profiles[i].length() == 0) continue;
    refs.clear();
    for (size_t j = 0; j < profiles.size(); ++j) {
      if (j != i) refs.push_back(&profiles[j]);
    }
    sum += BleuFromProfiles(profiles[i], refs, bleu);
  }
  return sum / static_cast<double>(profiles.size());
}

double CorpusMutualOverlap(const Corpus& corpus, const BleuConfig& bleu, int jobs) {
  RequireNonEmpty(corpus);
  std::vector<double> values(corpus.size());
  ParallelFor(corpus.size(), jobs,
              [&](size_t i) { values[i] = MutualOverlap(corpus.records()[i], bleu); });
  return SumInIdOrder(corpus, values) / static_cast<double>(corpus.size());
}

double GamesWithRepeatedQuestions(const Corpus& corpus) {
  RequireNonEmpty(corpus);
  size_t repeated = 0;
  for (const auto& record : corpus.records()) {
    std::set<TokenList> seen;
    for (const TokenList* q : QuestionTokens(record)) {
      if (q->empty()) continue;
      if (!seen.insert(*q).second) {
        ++repeated;
        break;
      }
    }
  }
  return 100.0 * static_cast<double>(repeated) / static_cast<double>(corpus.size());
}

double GlobalRecall(const Corpus& generated, const Vocabulary& train_vocab) {
  if (train_vocab.empty()) {
    throw Error(ErrorCode::kEmptyInput, "EmptyInput: training vocabulary is empty");
  }
  const auto used = TokenTypes(generated, train_vocab.scope());
  size_t recalled = 0;
  for (const auto& entry : train_vocab.entries()) recalled += used.count(entry.token);
  return 100.0 * static_cast<double>(recalled) / static_cast<double>(train_vocab.size());
}

double UnusedWordMeanRank(const Corpus& generated, const Vocabulary& train_vocab) {
  const auto used = TokenTypes(generated, train_vocab.scope());
  double rank_sum = 0.0;
  size_t unused = 0;
  const auto& entries = train_vocab.entries();
  for (size_t i = 0; i < entries.size(); ++i) {
    if (used.count(entries[i].token)) continue;
    rank_sum += static_cast<double>(i + 1);
    ++unused;
  }
  if (unused == 0) {
    throw Error(ErrorCode::kAllWordsUsed,
                fmt::format("AllWordsUsed: {} uses every training word", generated.id()));
  }
  return rank_sum / static_cast<double>(unused);
}

std::optional<double> LocalRecallD(const GameRecord& generated, const GameRecord& human,
                                   const StopwordSet& stopwords) {
  if (generated.game_id != human.game_id) {
    throw Error(ErrorCode::kGameMismatch,
                fmt::format("GameMismatch: generated game {} paired with human game {}",
                            generated.game_id, human.game_id));
  }
  const auto human_words = QuestionContentWords(human, stopwords);
  if (human_words.empty()) return std::nullopt;
  const auto generated_words = QuestionContentWords(generated, stopwords);
  size_t shared = 0;
  for (const auto& w : human_words) shared += generated_words.count(w);
  return 100.0 * static_cast<double>(shared) / static_cast<double>(human_words.size());
}

LocalRecallSummary CorpusLocalRecallD(const Corpus& generated, const Corpus& human,
                                      const StopwordSet& stopwords, int jobs) {
  const size_t n = generated.size();
  std::vector<std::optional<size_t>> partner(n);
  std::vector<std::optional<double>> values(n);
  for (size_t i = 0; i < n; ++i) partner[i] = human.Find(generated.records()[i].game_id);
  ParallelFor(n, jobs, [&](size_t i) {
    if (partner[i]) {
      values[i] = LocalRecallD(generated.records()[i], human.records()[*partner[i]], stopwords);
    }
  });

  LocalRecallSummary summary;
  double sum = 0.0;
  for (size_t index : generated.IdOrder()) {
    if (!partner[index]) {
      ++summary.unaligned;
    } else if (!values[index]) {
      ++summary.skipped;
    } else {
      ++summary.aligned;
      sum += *values[index];
    }
  }
  if (summary.aligned == 0) {
    throw Error(ErrorCode::kNoAlignedGames,
                fmt::format("NoAlignedGames: no game of {} pairs with a human game of {} that "
                            "has content words",
                            generated.id(), human.id()));
  }
  summary.lrd = sum / static_cast<double>(summary.aligned);
  return summary;
}

ZipfCurve BuildZipfCurve(const Corpus& corpus, SpeakerScope scope) {
  const auto counts = CountTokens(corpus, scope);
  if (counts.empty()) {
    throw Error(ErrorCode::kEmptyScope,
                fmt::format("EmptyScope: corpus {} has no {} tokens", corpus.id(),
                            SpeakerScopeName(scope)));
  }
  const Vocabulary ordered(counts, scope);
  ZipfCurve curve;
  curve.total_tokens = ordered.total_tokens();
  curve.points.reserve(ordered.size());
  for (size_t i = 0; i < ordered.size(); ++i) {
    curve.points.push_back({static_cast<int64_t>(i + 1), ordered.entries()[i].count});
  }
  return curve;
}

double VocabOverlap(const Corpus& a, const Corpus& b, SpeakerScope scope) {
  const auto types_a = TokenTypes(a, scope);
  const auto types_b = TokenTypes(b, scope);
  if (types_a.empty() || types_b.empty()) {
    throw Error(ErrorCode::kEmptyScope,
                fmt::format("EmptyScope: {} or {} has no {} tokens", a.id(), b.id(),
                            SpeakerScopeName(scope)));
  }
  size_t shared = 0;
  for (const auto& t : types_a) shared += types_b.count(t);
  const size_t united = types_a.size() + types_b.size() - shared;
  return 100.0 * static_cast<double>(shared) / static_cast<double>(united);
}

MetricReport EvaluateCorpus(const Corpus& generated, const Corpus* human,
                            const Vocabulary* train_vocab, const StopwordSet& stopwords,
                            const EvalOptions& options) {
  RequireNonEmpty(generated);
  MetricReport report;
  report.corpus_id = generated.id();
  report.n_dialogues = static_cast<int64_t>(generated.size());
  report.h = UnigramEntropy(generated, options.scope);

  // Symmetric games have no questioner role to be repetitive in.
  if (options.scope == SpeakerScope::kQuestionerOnly) {
    report.mo = CorpusMutualOverlap(generated, options.bleu, options.jobs);
    report.grq = GamesWithRepeatedQuestions(generated);
  }

  const auto counts = CountTokens(generated, options.scope);
  int64_t n_tokens = 0;
  for (const auto& kv : counts) n_tokens += kv.second;
  int64_t n_questions = 0;
  for (int q : generated.QuestionCounts()) n_questions += q;
  report.extras["n_tokens"] = static_cast<double>(n_tokens);
  report.extras["n_types"] = static_cast<double>(counts.size());
  report.extras["n_questions"] = static_cast<double>(n_questions);
  report.extras["mean_questions_per_dialogue"] =
      static_cast<double>(n_questions) / static_cast<double>(generated.size());

  if (train_vocab != nullptr) {
    report.gr = GlobalRecall(generated, *train_vocab);
    report.extras["train_vocab_size"] = static_cast<double>(train_vocab->size());
    try {
      report.extras["unused_word_mean_rank"] = UnusedWordMeanRank(generated, *train_vocab);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kAllWordsUsed) throw;
    }
  }
  if (human != nullptr) {
    const auto lrd = CorpusLocalRecallD(generated, *human, stopwords, options.jobs);
    report.lrd = lrd.lrd;
    report.extras["lrd_aligned"] = static_cast<double>(lrd.aligned);
    report.extras["lrd_skipped"] = static_cast<double>(lrd.skipped);
    report.extras["lrd_unaligned"] = static_cast<double>(lrd.unaligned);
    report.extras["vocab_overlap_human"] = VocabOverlap(generated, *human, options.scope);
  }
  return report;
}

}  // namespace dialometer
