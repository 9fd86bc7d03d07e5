#ifndef DIALOMETER_TASKSUCCESS_H_
#define DIALOMETER_TASKSUCCESS_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dialometer {

struct GameOutcome {
  std::string game_id;
  std::optional<bool> correct;
  std::optional<int> rank;  // 1-based position of the target
  int n_candidates = 0;
};

struct TurnPrediction {
  std::string game_id;
  int turn_index = 0;  // 0 = guess from the caption alone
  std::optional<bool> correct;
  std::optional<int> rank;
  int n_candidates = 0;
};

struct OutcomeSet {
  std::vector<GameOutcome> games;       // lines without "turn"
  std::vector<TurnPrediction> turns;    // lines with "turn"
};

OutcomeSet ParseOutcomes(std::istream& in, std::string_view source_name = "<stream>");
OutcomeSet LoadOutcomes(const std::filesystem::path& path);

// Percentile denominator. kCandidates (n) makes a 20-rank shift worth exactly
// 1 point at n = 2000; rank 1 then maps to 100 (n - 1) / n.
enum class PercentileBase { kCandidates, kCandidatesMinusOne };

double PercentileRank(int rank, int n, PercentileBase base = PercentileBase::kCandidates);

double Accuracy(std::span<const GameOutcome> outcomes);
double MeanPercentileRank(std::span<const GameOutcome> outcomes,
                          PercentileBase base = PercentileBase::kCandidates);

struct FixedCandidates {
  int k;
};
struct Ranking {
  int n;
};
using TaskKind = std::variant<FixedCandidates, Ranking>;

double ChanceLevel(const TaskKind& task);

enum class ChanceAggregation {
  kChanceOfMeanCount,  // 100 / mean(k)
  kMeanOfChance,       // mean(100 / k)
};

// Chance accuracy for games whose candidate count varies.
double ChanceLevelForCounts(std::span<const int> candidate_counts,
                            ChanceAggregation aggregation = ChanceAggregation::kChanceOfMeanCount);

enum class CurveMode { kAccuracy, kMpr };

struct CurvePoint {
  int turn_index = 0;
  double value = 0.0;
  size_t n_games = 0;

  bool operator==(const CurvePoint&) const = default;
};

// One point per observed turn index, ascending.
std::vector<CurvePoint> PerTurnCurve(std::span<const TurnPrediction> predictions, CurveMode mode,
                                     PercentileBase base = PercentileBase::kCandidates);

}  // namespace dialometer

#endif  // DIALOMETER_TASKSUCCESS_H_
