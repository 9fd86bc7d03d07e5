#include "dialometer/corpus.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <unordered_set>

#include <fmt/format.h>
#include <json.hpp>

#include "dialometer/error.h"

namespace dialometer {
namespace {

using nlohmann::json;

std::string_view StatusName(GameStatus status) {
  switch (status) {
    case GameStatus::kSuccess: return "success";
    case GameStatus::kFailure: return "failure";
    case GameStatus::kIncomplete: return "incomplete";
    case GameStatus::kUnknown: return "unknown";
  }
  return "unknown";
}

// Collects the members of `object` not named in `known` as a JSON object
// text, or "" if there are none.
std::string ExtraFields(const json& object,
                        std::initializer_list<std::string_view> known) {
  json extra = json::object();
  for (const auto& [key, value] : object.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      extra[key] = value;
    }
  }
  return extra.empty() ? std::string() : extra.dump();
}

void MergeExtra(json& object, const std::string& extra_json) {
  if (extra_json.empty()) return;
  const json extra = json::parse(extra_json);
  for (const auto& [key, value] : extra.items()) {
    object[key] = value;
  }
}

std::string RequireString(const json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end()) throw std::invalid_argument(fmt::format("missing \"{}\"", key));
  if (!it->is_string()) throw std::invalid_argument(fmt::format("\"{}\" must be a string", key));
  return it->get<std::string>();
}

std::optional<std::string> OptionalString(const json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw std::invalid_argument(fmt::format("\"{}\" must be a string", key));
  return it->get<std::string>();
}

Candidate ParseCandidate(const json& value) {
  if (!value.is_object()) throw std::invalid_argument("candidate must be an object");
  Candidate candidate;
  candidate.id = RequireString(value, "id");
  if (candidate.id.empty()) throw std::invalid_argument("candidate id is empty");
  candidate.category = OptionalString(value, "category");
  if (auto it = value.find("bbox"); it != value.end() && !it->is_null()) {
    if (!it->is_array() || it->size() != 4) {
      throw std::invalid_argument("bbox must be [x, y, w, h]");
    }
    std::array<double, 4> box{};
    for (size_t i = 0; i < 4; ++i) {
      if (!(*it)[i].is_number()) throw std::invalid_argument("bbox entries must be numbers");
      box[i] = (*it)[i].get<double>();
    }
    candidate.bbox = box;
  }
  candidate.extra_json = ExtraFields(value, {"id", "category", "bbox"});
  return candidate;
}

Turn ParseTurn(const json& value) {
  if (!value.is_object()) throw std::invalid_argument("turn must be an object");
  Turn turn;
  const std::string speaker = RequireString(value, "speaker");
  if (speaker == "Q") {
    turn.speaker = Speaker::kQuestioner;
  } else if (speaker == "A") {
    turn.speaker = Speaker::kAnswerer;
  } else {
    throw std::invalid_argument(fmt::format("unknown speaker \"{}\"", speaker));
  }
  turn.text = RequireString(value, "text");
  if (auto it = value.find("pos"); it != value.end() && !it->is_null()) {
    if (!it->is_array()) throw std::invalid_argument("\"pos\" must be an array");
    std::vector<std::string> tags;
    for (const auto& tag : *it) {
      if (!tag.is_string()) throw std::invalid_argument("pos tags must be strings");
      tags.push_back(tag.get<std::string>());
    }
    turn.pos_tags = std::move(tags);
  }
  turn.extra_json = ExtraFields(value, {"speaker", "text", "pos"});
  return turn;
}

GameRecord ParseRecord(const json& value) {
  if (!value.is_object()) throw std::invalid_argument("line is not a JSON object");
  GameRecord record;
  record.game_id = RequireString(value, "game_id");
  if (record.game_id.empty()) throw std::invalid_argument("game_id is empty");
  record.image_id = OptionalString(value, "image_id");
  record.caption = OptionalString(value, "caption");
  record.target_id = OptionalString(value, "target_id");
  if (auto it = value.find("candidates"); it != value.end() && !it->is_null()) {
    if (!it->is_array()) throw std::invalid_argument("\"candidates\" must be an array");
    for (const auto& c : *it) record.candidates.push_back(ParseCandidate(c));
  }
  auto turns = value.find("turns");
  if (turns == value.end() || !turns->is_array()) {
    throw std::invalid_argument("\"turns\" must be an array");
  }
  for (const auto& t : *turns) record.turns.push_back(ParseTurn(t));
  if (auto status = OptionalString(value, "status")) {
    if (*status == "success") {
      record.status = GameStatus::kSuccess;
    } else if (*status == "failure") {
      record.status = GameStatus::kFailure;
    } else if (*status == "incomplete") {
      record.status = GameStatus::kIncomplete;
    } else {
      throw std::invalid_argument(fmt::format("unknown status \"{}\"", *status));
    }
  }
  record.extra_json =
      ExtraFields(value, {"game_id", "image_id", "caption", "candidates",
                          "target_id", "turns", "status"});
  return record;
}

// Record-level invariants. `where` prefixes the message.
void ValidateRecord(const GameRecord& record, const std::string& where) {
  if (record.turns.empty()) {
    throw Error(ErrorCode::kEmptyDialogue,
                fmt::format("{}EmptyDialogue: game {} has no turns", where, record.game_id));
  }
  std::unordered_set<std::string_view> ids;
  for (const auto& c : record.candidates) {
    if (c.id.empty() || !ids.insert(c.id).second) {
      throw Error(ErrorCode::kMalformedLine,
                  fmt::format("{}MalformedLine: game {} has an empty or duplicate candidate id",
                              where, record.game_id));
    }
  }
  if (record.target_id && !record.candidates.empty() && !ids.count(*record.target_id)) {
    throw Error(ErrorCode::kTargetNotInCandidates,
                fmt::format("{}TargetNotInCandidates: game {} target {} is not a candidate",
                            where, record.game_id, *record.target_id));
  }
  for (const auto& turn : record.turns) {
    if (turn.pos_tags && turn.pos_tags->size() != turn.tokens.size()) {
      throw Error(ErrorCode::kMalformedLine,
                  fmt::format("{}MalformedLine: game {} has {} pos tags for {} tokens", where,
                              record.game_id, turn.pos_tags->size(), turn.tokens.size()));
    }
  }
}

void TokenizeRecord(GameRecord& record, const TokenizerConfig& config) {
  for (auto& turn : record.turns) turn.tokens = Tokenize(turn.text, config);
}

}  // namespace

std::string_view SpeakerScopeName(SpeakerScope scope) {
  return scope == SpeakerScope::kBoth ? "both" : "questioner";
}

std::optional<SpeakerScope> ParseSpeakerScope(std::string_view name) {
  if (name == "questioner" || name == "q") return SpeakerScope::kQuestionerOnly;
  if (name == "both") return SpeakerScope::kBoth;
  return std::nullopt;
}

int GameRecord::QuestionCount() const {
  return static_cast<int>(std::count_if(turns.begin(), turns.end(), [](const Turn& t) {
    return t.speaker == Speaker::kQuestioner;
  }));
}

const Candidate* GameRecord::FindCandidate(std::string_view id) const {
  for (const auto& c : candidates) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

const Candidate* GameRecord::Target() const {
  return target_id ? FindCandidate(*target_id) : nullptr;
}

bool StatusFilter::Accepts(GameStatus status) const {
  switch (status) {
    case GameStatus::kSuccess: return success;
    case GameStatus::kFailure: return failure;
    case GameStatus::kIncomplete: return incomplete;
    case GameStatus::kUnknown: return unknown;
  }
  return false;
}

std::optional<StatusFilter> ParseStatusFilter(std::string_view text) {
  if (text == "all") return StatusFilter::All();
  if (text == "played") return StatusFilter::Played();
  StatusFilter filter{false, false, false, false};
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view item = text.substr(start, end - start);
    if (item == "success") {
      filter.success = true;
    } else if (item == "failure") {
      filter.failure = true;
    } else if (item == "incomplete") {
      filter.incomplete = true;
    } else if (item == "unknown") {
      filter.unknown = true;
    } else {
      return std::nullopt;
    }
    start = end + 1;
  }
  return filter;
}

std::string FormatStatusFilter(const StatusFilter& filter) {
  std::vector<std::string_view> parts;
  if (filter.success) parts.push_back("success");
  if (filter.failure) parts.push_back("failure");
  if (filter.incomplete) parts.push_back("incomplete");
  if (filter.unknown) parts.push_back("unknown");
  return fmt::format("{}", fmt::join(parts, ","));
}

Corpus::Corpus(std::string corpus_id, std::vector<GameRecord> records,
               TokenizerConfig config)
    : corpus_id_(std::move(corpus_id)), records_(std::move(records)), config_(config) {
  for (auto& record : records_) {
    TokenizeRecord(record, config_);
    ValidateRecord(record, "");
  }
  Index();
}

Corpus::Corpus(Tokenized, std::string corpus_id, std::vector<GameRecord> records,
               TokenizerConfig config)
    : corpus_id_(std::move(corpus_id)), records_(std::move(records)), config_(config) {
  Index();
}

void Corpus::Index() {
  std::unordered_set<std::string_view> seen;
  for (const auto& record : records_) {
    if (!seen.insert(record.game_id).second) {
      throw Error(ErrorCode::kDuplicateGameId,
                  fmt::format("DuplicateGameId: {}", record.game_id));
    }
  }
  id_order_.resize(records_.size());
  for (size_t i = 0; i < records_.size(); ++i) id_order_[i] = i;
  std::sort(id_order_.begin(), id_order_.end(), [this](size_t a, size_t b) {
    return records_[a].game_id < records_[b].game_id;
  });
}

std::vector<int> Corpus::QuestionCounts() const {
  std::vector<int> counts;
  counts.reserve(records_.size());
  for (const auto& r : records_) counts.push_back(r.QuestionCount());
  return counts;
}

std::optional<size_t> Corpus::Find(std::string_view game_id) const {
  auto it = std::lower_bound(id_order_.begin(), id_order_.end(), game_id,
                             [this](size_t index, std::string_view id) {
                               return records_[index].game_id < id;
                             });
  if (it == id_order_.end() || records_[*it].game_id != game_id) return std::nullopt;
  return *it;
}

Corpus ParseCorpus(std::istream& in, std::string corpus_id, const TokenizerConfig& config,
                   const StatusFilter& filter, std::string_view source_name) {
  std::vector<GameRecord> records;
  std::unordered_set<std::string> seen;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = fmt::format("{}:{}: ", source_name, line_no);
    GameRecord record;
    try {
      record = ParseRecord(json::parse(line));
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kMalformedLine,
                  fmt::format("{}MalformedLine({}): {}", where, line_no, e.what()));
    }
    TokenizeRecord(record, config);
    ValidateRecord(record, where);
    if (!seen.insert(record.game_id).second) {
      throw Error(ErrorCode::kDuplicateGameId,
                  fmt::format("{}DuplicateGameId: {}", where, record.game_id));
    }
    if (filter.Accepts(record.status)) records.push_back(std::move(record));
  }
  if (in.bad()) {
    throw Error(ErrorCode::kIo, fmt::format("{}: read error", source_name));
  }
  return Corpus(Corpus::Tokenized{}, std::move(corpus_id), std::move(records), config);
}

Corpus LoadCorpus(const std::filesystem::path& path, const TokenizerConfig& config,
                  const StatusFilter& filter) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, fmt::format("{}: cannot open corpus file", path.string()));
  }
  return ParseCorpus(in, path.stem().string(), config, filter, path.string());
}

std::string SerializeRecord(const GameRecord& record) {
  json out = json::object();
  out["game_id"] = record.game_id;
  if (record.image_id) out["image_id"] = *record.image_id;
  if (record.caption) out["caption"] = *record.caption;
  if (!record.candidates.empty()) {
    json candidates = json::array();
    for (const auto& c : record.candidates) {
      json cj = json::object();
      cj["id"] = c.id;
      if (c.category) cj["category"] = *c.category;
      if (c.bbox) cj["bbox"] = *c.bbox;
      MergeExtra(cj, c.extra_json);
      candidates.push_back(std::move(cj));
    }
    out["candidates"] = std::move(candidates);
  }
  if (record.target_id) out["target_id"] = *record.target_id;
  json turns = json::array();
  for (const auto& t : record.turns) {
    json tj = json::object();
    tj["speaker"] = t.speaker == Speaker::kQuestioner ? "Q" : "A";
    tj["text"] = t.text;
    if (t.pos_tags) tj["pos"] = *t.pos_tags;
    MergeExtra(tj, t.extra_json);
    turns.push_back(std::move(tj));
  }
  out["turns"] = std::move(turns);
  if (record.status != GameStatus::kUnknown) out["status"] = StatusName(record.status);
  MergeExtra(out, record.extra_json);
  return out.dump();
}

void WriteCorpus(std::ostream& out, const Corpus& corpus) {
  for (const auto& record : corpus.records()) out << SerializeRecord(record) << '\n';
}

Corpus Subsample(const Corpus& corpus, double fraction, uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("subsample fraction {} is outside (0, 1]", fraction));
  }
  const size_t n = corpus.size();
  const auto k = std::min(n, static_cast<size_t>(std::ceil(fraction * static_cast<double>(n))));
  // Partial Fisher-Yates. Bounded draws use rejection on the raw engine
  // output because std distributions are implementation-defined.
  std::mt19937_64 engine(seed);
  auto bounded = [&engine](uint64_t bound) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do {
      x = engine();
    } while (x >= limit);
    return x % bound;
  };
  std::vector<size_t> indices(n);
  for (size_t i = 0; i < n; ++i) indices[i] = i;
  for (size_t i = 0; i < k; ++i) {
    const size_t j = i + static_cast<size_t>(bounded(n - i));
    std::swap(indices[i], indices[j]);
  }
  indices.resize(k);
  std::sort(indices.begin(), indices.end());
  std::vector<GameRecord> picked;
  picked.reserve(k);
  for (size_t i : indices) picked.push_back(corpus.records()[i]);
  return Corpus(Corpus::Tokenized{}, corpus.id(), std::move(picked),
                corpus.tokenizer_config());
}

}  // namespace dialometer
