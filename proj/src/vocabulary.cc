#include "dialometer/vocabulary.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include <fmt/format.h>

#include "dialometer/error.h"

namespace dialometer {

Vocabulary::Vocabulary(const std::unordered_map<std::string, int64_t>& counts,
                       SpeakerScope scope)
    : scope_(scope) {
  entries_.reserve(counts.size());
  for (const auto& [token, count] : counts) {
    entries_.push_back({token, count});
    total_tokens_ += count;
  }
  std::sort(entries_.begin(), entries_.end(), [](const VocabEntry& a, const VocabEntry& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.token < b.token;
  });
  rank_.reserve(entries_.size());
  for (size_t i = 0; i < entries_.size(); ++i) {
    rank_.emplace(entries_[i].token, static_cast<int>(i + 1));
  }
}

int64_t Vocabulary::Count(const std::string& token) const {
  auto it = rank_.find(token);
  return it == rank_.end() ? 0 : entries_[it->second - 1].count;
}

std::optional<int> Vocabulary::Rank(const std::string& token) const {
  auto it = rank_.find(token);
  if (it == rank_.end()) return std::nullopt;
  return it->second;
}

std::unordered_map<std::string, int64_t> CountTokens(const Corpus& corpus,
                                                     SpeakerScope scope) {
  std::unordered_map<std::string, int64_t> counts;
  for (const auto& record : corpus.records()) {
    for (const auto& turn : record.turns) {
      if (!InScope(turn.speaker, scope)) continue;
      for (const auto& token : turn.tokens) ++counts[token];
    }
  }
  return counts;
}

Vocabulary BuildVocabulary(const Corpus& corpus, SpeakerScope scope, int min_count) {
  if (min_count < 1) {
    throw Error(ErrorCode::kInvalidArgument, "min_count must be at least 1");
  }
  auto counts = CountTokens(corpus, scope);
  if (counts.empty()) {
    throw Error(ErrorCode::kEmptyScope,
                fmt::format("EmptyScope: corpus {} has no {} tokens", corpus.id(),
                            SpeakerScopeName(scope)));
  }
  std::erase_if(counts, [min_count](const auto& kv) { return kv.second < min_count; });
  return Vocabulary(counts, scope);
}

std::unordered_set<std::string> TokenTypes(const Corpus& corpus, SpeakerScope scope) {
  std::unordered_set<std::string> types;
  for (const auto& record : corpus.records()) {
    for (const auto& turn : record.turns) {
      if (!InScope(turn.speaker, scope)) continue;
      types.insert(turn.tokens.begin(), turn.tokens.end());
    }
  }
  return types;
}

StopwordSet ParseStopwords(std::istream& in) {
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    words.insert(line.substr(first, last - first + 1));
  }
  return StopwordSet(std::move(words));
}

StopwordSet LoadStopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, fmt::format("{}: cannot open stopword file", path.string()));
  }
  return ParseStopwords(in);
}

const StopwordSet& DefaultStopwords() {
  static const StopwordSet kDefault = [] {
    std::istringstream in(
#include "default_stopwords.inc"
    );
    return ParseStopwords(in);
  }();
  return kDefault;
}

std::set<std::string> ContentWords(const TokenList& tokens, const StopwordSet& stopwords) {
  std::set<std::string> words;
  for (const auto& token : tokens) {
    if (!stopwords.Contains(token) && HasAlphabetic(token)) words.insert(token);
  }
  return words;
}

}  // namespace dialometer
