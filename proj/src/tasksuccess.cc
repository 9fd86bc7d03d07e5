#include "dialometer/tasksuccess.h"

#include <fstream>
#include <istream>
#include <map>

#include <fmt/format.h>
#include <json.hpp>

#include "dialometer/error.h"

namespace dialometer {
namespace {

using nlohmann::json;

void ValidateOutcome(const std::string& game_id, const std::optional<bool>& correct,
                     const std::optional<int>& rank, int n_candidates) {
  if (game_id.empty()) throw std::invalid_argument("game_id is empty");
  if (!correct && !rank) throw std::invalid_argument("needs \"correct\" or \"rank\"");
  if (n_candidates < 2) throw std::invalid_argument("n_candidates must be at least 2");
  if (rank && (*rank < 1 || *rank > n_candidates)) {
    throw std::invalid_argument(fmt::format("rank {} outside 1..{}", *rank, n_candidates));
  }
}

void RequireNonEmpty(size_t n, std::string_view what) {
  if (n == 0) throw Error(ErrorCode::kEmptyInput, fmt::format("EmptyInput: no {}", what));
}

}  // namespace

OutcomeSet ParseOutcomes(std::istream& in, std::string_view source_name) {
  OutcomeSet set;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      if (!j.is_object()) throw std::invalid_argument("line is not a JSON object");
      const std::string game_id = j.at("game_id").get<std::string>();
      std::optional<bool> correct;
      std::optional<int> rank;
      if (auto it = j.find("correct"); it != j.end() && !it->is_null()) correct = it->get<bool>();
      if (auto it = j.find("rank"); it != j.end() && !it->is_null()) rank = it->get<int>();
      const int n = j.at("n_candidates").get<int>();
      ValidateOutcome(game_id, correct, rank, n);
      if (auto it = j.find("turn"); it != j.end() && !it->is_null()) {
        const int turn = it->get<int>();
        if (turn < 0) throw std::invalid_argument("turn must be non-negative");
        set.turns.push_back({game_id, turn, correct, rank, n});
      } else {
        set.games.push_back({game_id, correct, rank, n});
      }
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kMalformedLine,
                  fmt::format("{}:{}: MalformedLine({}): {}", source_name, line_no, line_no,
                              e.what()));
    }
  }
  return set;
}

OutcomeSet LoadOutcomes(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, fmt::format("{}: cannot open outcomes file", path.string()));
  }
  return ParseOutcomes(in, path.string());
}

double PercentileRank(int rank, int n, PercentileBase base) {
  if (n < 1 || rank < 1 || rank > n) {
    throw Error(ErrorCode::kRankOutOfRange,
                fmt::format("RankOutOfRange: rank {} with {} candidates", rank, n));
  }
  const double denominator = base == PercentileBase::kCandidates ? n : n - 1;
  if (denominator <= 0) {
    throw Error(ErrorCode::kRankOutOfRange, "RankOutOfRange: need at least 2 candidates");
  }
  return 100.0 * static_cast<double>(n - rank) / denominator;
}

double Accuracy(std::span<const GameOutcome> outcomes) {
  RequireNonEmpty(outcomes.size(), "outcomes");
  size_t correct = 0;
  for (const auto& o : outcomes) {
    if (!o.correct) {
      throw Error(ErrorCode::kMissingField,
                  fmt::format("MissingField: outcome for {} has no \"correct\"", o.game_id));
    }
    correct += *o.correct ? 1 : 0;
  }
  return 100.0 * static_cast<double>(correct) / static_cast<double>(outcomes.size());
}

double MeanPercentileRank(std::span<const GameOutcome> outcomes, PercentileBase base) {
  RequireNonEmpty(outcomes.size(), "outcomes");
  double sum = 0.0;
  for (const auto& o : outcomes) {
    if (!o.rank) {
      throw Error(ErrorCode::kMissingField,
                  fmt::format("MissingField: outcome for {} has no \"rank\"", o.game_id));
    }
    sum += PercentileRank(*o.rank, o.n_candidates, base);
  }
  return sum / static_cast<double>(outcomes.size());
}

double ChanceLevel(const TaskKind& task) {
  if (const auto* fixed = std::get_if<FixedCandidates>(&task)) {
    if (fixed->k < 2) throw Error(ErrorCode::kInvalidArgument, "need at least 2 candidates");
    return 100.0 / fixed->k;
  }
  if (std::get<Ranking>(task).n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least 2 candidates");
  }
  return 50.0;
}

double ChanceLevelForCounts(std::span<const int> candidate_counts,
                            ChanceAggregation aggregation) {
  RequireNonEmpty(candidate_counts.size(), "candidate counts");
  double sum = 0.0;
  for (int k : candidate_counts) {
    if (k < 2) throw Error(ErrorCode::kInvalidArgument, "need at least 2 candidates");
    sum += aggregation == ChanceAggregation::kMeanOfChance ? ChanceLevel(FixedCandidates{k})
                                                          : static_cast<double>(k);
  }
  const double mean = sum / static_cast<double>(candidate_counts.size());
  return aggregation == ChanceAggregation::kMeanOfChance ? mean : 100.0 / mean;
}

std::vector<CurvePoint> PerTurnCurve(std::span<const TurnPrediction> predictions,
                                     CurveMode mode, PercentileBase base) {
  RequireNonEmpty(predictions.size(), "turn predictions");
  std::map<int, std::vector<GameOutcome>> by_turn;
  for (const auto& p : predictions) {
    by_turn[p.turn_index].push_back({p.game_id, p.correct, p.rank, p.n_candidates});
  }
  std::vector<CurvePoint> curve;
  curve.reserve(by_turn.size());
  for (const auto& [turn, slice] : by_turn) {
    const double value =
        mode == CurveMode::kAccuracy ? Accuracy(slice) : MeanPercentileRank(slice, base);
    curve.push_back({turn, value, slice.size()});
  }
  return curve;
}

}  // namespace dialometer
