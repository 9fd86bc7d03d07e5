#ifndef DIALOMETER_CORPUS_H_
#define DIALOMETER_CORPUS_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dialometer/tokenizer.h"

namespace dialometer {

enum class Speaker { kQuestioner, kAnswerer };

// Which turns feed token-level statistics. Asymmetric games evaluate the
// questioner; symmetric games (both agents generate) use both sides.
enum class SpeakerScope { kQuestionerOnly, kBoth };

std::string_view SpeakerScopeName(SpeakerScope scope);
std::optional<SpeakerScope> ParseSpeakerScope(std::string_view name);

inline bool InScope(Speaker speaker, SpeakerScope scope) {
  return scope == SpeakerScope::kBoth || speaker == Speaker::kQuestioner;
}

struct Turn {
  Speaker speaker = Speaker::kQuestioner;
  std::string text;
  TokenList tokens;  // Tokenize(text) under the owning corpus' config.
  std::optional<std::vector<std::string>> pos_tags;
  std::string extra_json;  // unrecognized fields, "" when none

  bool operator==(const Turn&) const = default;
};

struct Candidate {
  std::string id;
  std::optional<std::string> category;
  std::optional<std::array<double, 4>> bbox;  // x, y, w, h in pixels
  std::string extra_json;

  bool operator==(const Candidate&) const = default;
};

enum class GameStatus { kSuccess, kFailure, kIncomplete, kUnknown };

struct GameRecord {
  std::string game_id;
  std::optional<std::string> image_id;
  std::optional<std::string> caption;
  std::vector<Candidate> candidates;
  std::optional<std::string> target_id;
  std::vector<Turn> turns;
  GameStatus status = GameStatus::kUnknown;
  std::string extra_json;

  bool operator==(const GameRecord&) const = default;

  int QuestionCount() const;
  const Candidate* FindCandidate(std::string_view id) const;
  const Candidate* Target() const;
};

struct StatusFilter {
  bool success = true;
  bool failure = true;
  bool incomplete = true;
  bool unknown = true;

  static StatusFilter All() { return {}; }
  // Played games: everything except games the players abandoned.
  static StatusFilter Played() { return {true, true, false, true}; }

  bool Accepts(GameStatus status) const;
  bool operator==(const StatusFilter&) const = default;
};

// Comma-separated list of statuses, or "all" / "played".
std::optional<StatusFilter> ParseStatusFilter(std::string_view text);
std::string FormatStatusFilter(const StatusFilter& filter);

// Immutable, validated collection of games. Construction tokenizes every turn
// under `config` and checks the record invariants.
class Corpus {
 public:
  Corpus(std::string corpus_id, std::vector<GameRecord> records,
         TokenizerConfig config = {});

  const std::string& id() const { return corpus_id_; }
  const std::vector<GameRecord>& records() const { return records_; }
  const TokenizerConfig& tokenizer_config() const { return config_; }
  size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  std::vector<int> QuestionCounts() const;
  // Record indices ordered by game_id; the fixed reduction order for
  // corpus-level means.
  const std::vector<size_t>& IdOrder() const { return id_order_; }
  // Index of the record with this id, or nullopt.
  std::optional<size_t> Find(std::string_view game_id) const;

  bool operator==(const Corpus& other) const {
    return corpus_id_ == other.corpus_id_ && config_ == other.config_ &&
           records_ == other.records_;
  }

 private:
  struct Tokenized {};
  // Records whose tokens were already produced under `config`.
  Corpus(Tokenized, std::string corpus_id, std::vector<GameRecord> records,
         TokenizerConfig config);
  void Index();

  friend Corpus ParseCorpus(std::istream&, std::string, const TokenizerConfig&,
                            const StatusFilter&, std::string_view);
  friend Corpus Subsample(const Corpus&, double, uint64_t);

  std::string corpus_id_;
  std::vector<GameRecord> records_;
  TokenizerConfig config_;
  std::vector<size_t> id_order_;
};

// Reads the JSON-Lines corpus format. `source_name` prefixes error messages.
Corpus ParseCorpus(std::istream& in, std::string corpus_id,
                   const TokenizerConfig& config = {},
                   const StatusFilter& filter = StatusFilter::All(),
                   std::string_view source_name = "<stream>");

// Corpus id defaults to the file stem.
Corpus LoadCorpus(const std::filesystem::path& path,
                  const TokenizerConfig& config = {},
                  const StatusFilter& filter = StatusFilter::All());

void WriteCorpus(std::ostream& out, const Corpus& corpus);
std::string SerializeRecord(const GameRecord& record);

// Deterministic draw of ceil(fraction * N) records without replacement;
// the original order is kept.
Corpus Subsample(const Corpus& corpus, double fraction, uint64_t seed);

}  // namespace dialometer

#endif  // DIALOMETER_CORPUS_H_
