#ifndef DIALOMETER_VOCABULARY_H_
#define DIALOMETER_VOCABULARY_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dialometer/corpus.h"

namespace dialometer {

struct VocabEntry {
  std::string token;
  int64_t count = 0;

  bool operator==(const VocabEntry&) const = default;
};

// Token counts with frequency ranks: rank 1 is the most frequent token, ties
// broken lexicographically by UTF-8 bytes.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(const std::unordered_map<std::string, int64_t>& counts, SpeakerScope scope);

  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  int64_t total_tokens() const { return total_tokens_; }
  SpeakerScope scope() const { return scope_; }

  // Entries in rank order; entries()[r - 1] has rank r.
  const std::vector<VocabEntry>& entries() const { return entries_; }

  bool Contains(const std::string& token) const { return rank_.count(token) != 0; }
  int64_t Count(const std::string& token) const;
  std::optional<int> Rank(const std::string& token) const;

 private:
  std::vector<VocabEntry> entries_;
  std::unordered_map<std::string, int> rank_;
  int64_t total_tokens_ = 0;
  SpeakerScope scope_ = SpeakerScope::kQuestionerOnly;
};

// Raw token counts over the turns in scope.
std::unordered_map<std::string, int64_t> CountTokens(const Corpus& corpus, SpeakerScope scope);

// Tokens with count < min_count are dropped; total_tokens covers what is kept.
// Throws EmptyScope if the selected speakers produced no tokens.
Vocabulary BuildVocabulary(const Corpus& corpus, SpeakerScope scope, int min_count = 1);

// Distinct tokens over the turns in scope.
std::unordered_set<std::string> TokenTypes(const Corpus& corpus, SpeakerScope scope);

class StopwordSet {
 public:
  StopwordSet() = default;
  explicit StopwordSet(std::unordered_set<std::string> words) : words_(std::move(words)) {}

  bool Contains(const std::string& token) const { return words_.count(token) != 0; }
  size_t size() const { return words_.size(); }
  const std::unordered_set<std::string>& words() const { return words_; }

 private:
  std::unordered_set<std::string> words_;
};

// One token per line; blank lines and text after '#' are ignored.
StopwordSet ParseStopwords(std::istream& in);
StopwordSet LoadStopwords(const std::filesystem::path& path);
// Built-in English function-word list used when no file is supplied.
const StopwordSet& DefaultStopwords();

// Unique tokens that are not stopwords and contain an alphabetic character.
std::set<std::string> ContentWords(const TokenList& tokens, const StopwordSet& stopwords);

}  // namespace dialometer

#endif  // DIALOMETER_VOCABULARY_H_
