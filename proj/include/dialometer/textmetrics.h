#ifndef DIALOMETER_TEXTMETRICS_H_
#define DIALOMETER_TEXTMETRICS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dialometer/bleu.h"
#include "dialometer/corpus.h"
#include "dialometer/vocabulary.h"

namespace dialometer {

// Corpus-level linguistic metrics. Percentages are on a 0-100 scale, MO on
// 0-1, H in bits. A metric is absent when its inputs were not supplied.
struct MetricReport {
  std::string corpus_id;
  int64_t n_dialogues = 0;
  std::optional<double> h;
  std::optional<double> mo;
  std::optional<double> grq;
  std::optional<double> gr;
  std::optional<double> lrd;
  std::map<std::string, double> extras;

  bool operator==(const MetricReport&) const = default;
};

struct ZipfPoint {
  int64_t rank = 0;
  int64_t frequency = 0;

  bool operator==(const ZipfPoint&) const = default;
};

struct ZipfCurve {
  std::vector<ZipfPoint> points;
  int64_t total_tokens = 0;
};

struct LocalRecallSummary {
  double lrd = 0.0;
  size_t aligned = 0;    // pairs that entered the mean
  size_t skipped = 0;    // pairs whose human dialogue has no content words
  size_t unaligned = 0;  // generated games with no human counterpart
};

struct EvalOptions {
  BleuConfig bleu;
  SpeakerScope scope = SpeakerScope::kQuestionerOnly;
  int jobs = 1;
};

// Shannon entropy (bits) of the corpus-level unigram distribution.
double UnigramEntropy(const Corpus& corpus, SpeakerScope scope);

// Mean BLEU-4 of each question against the dialogue's other questions.
// A single question gives 0; questions with no tokens score 0.
double MutualOverlap(const GameRecord& dialogue, const BleuConfig& bleu = {});
double CorpusMutualOverlap(const Corpus& corpus, const BleuConfig& bleu = {}, int jobs = 1);

// Percentage of dialogues where two questions have the same non-empty token
// sequence.
double GamesWithRepeatedQuestions(const Corpus& corpus);

// Percentage of the training vocabulary used by the generated corpus. The
// generated side is read under the vocabulary's speaker scope.
double GlobalRecall(const Corpus& generated, const Vocabulary& train_vocab);

// Mean frequency rank of training words the generated corpus never uses.
double UnusedWordMeanRank(const Corpus& generated, const Vocabulary& train_vocab);

// Percentage of the human content words (questioner turns) that the
// generated dialogue also uses. nullopt when the human side has none.
std::optional<double> LocalRecallD(const GameRecord& generated, const GameRecord& human,
                                   const StopwordSet& stopwords);
LocalRecallSummary CorpusLocalRecallD(const Corpus& generated, const Corpus& human,
                                      const StopwordSet& stopwords, int jobs = 1);

ZipfCurve BuildZipfCurve(const Corpus& corpus, SpeakerScope scope);

// Jaccard overlap of the two token-type sets, as a percentage.
double VocabOverlap(const Corpus& a, const Corpus& b, SpeakerScope scope);

// Assembles one report row. gr needs `train_vocab`, lrd needs `human`.
MetricReport EvaluateCorpus(const Corpus& generated, const Corpus* human,
                            const Vocabulary* train_vocab, const StopwordSet& stopwords,
                            const EvalOptions& options = {});

}  // namespace dialometer

#endif  // DIALOMETER_TEXTMETRICS_H_
