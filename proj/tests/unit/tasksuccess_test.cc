#include "dialometer/tasksuccess.h"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "dialometer/error.h"

namespace dialometer {
namespace {

GameOutcome Judged(bool correct) { return {"g", correct, std::nullopt, 5}; }
GameOutcome Ranked(int rank, int n) { return {"g", std::nullopt, rank, n}; }

TEST(Accuracy, Examples) {
  const std::vector<GameOutcome> three_of_four = {Judged(true), Judged(true), Judged(false),
                                                  Judged(true)};
  EXPECT_DOUBLE_EQ(Accuracy(three_of_four), 75.0);
  const std::vector<GameOutcome> none = {Judged(false), Judged(false)};
  EXPECT_EQ(Accuracy(none), 0.0);
}

TEST(Accuracy, Errors) {
  try {
    Accuracy({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyInput);
  }
  const std::vector<GameOutcome> ranked = {Ranked(1, 3)};
  try {
    Accuracy(ranked);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingField);
  }
}

TEST(PercentileRank, WorkedExample) {
  EXPECT_EQ(PercentileRank(80, 2000), 96.0);
  EXPECT_EQ(PercentileRank(2000, 2000), 0.0);
  EXPECT_DOUBLE_EQ(PercentileRank(1, 2000), 99.95);
  for (int r = 1; r + 20 <= 2000; r += 37) {
    EXPECT_NEAR(PercentileRank(r, 2000) - PercentileRank(r + 20, 2000), 1.0, 1e-12);
  }
  EXPECT_DOUBLE_EQ(PercentileRank(1, 2000, PercentileBase::kCandidatesMinusOne), 100.0);
}

TEST(PercentileRank, StrictlyDecreasingInRank) {
  for (int r = 1; r < 50; ++r) EXPECT_GT(PercentileRank(r, 50), PercentileRank(r + 1, 50));
}

TEST(PercentileRank, OutOfRange) {
  EXPECT_THROW(PercentileRank(0, 10), Error);
  EXPECT_THROW(PercentileRank(11, 10), Error);
}

TEST(MeanPercentileRank, Examples) {
  const std::vector<GameOutcome> ones = {Ranked(1, 2), Ranked(1, 2)};
  EXPECT_DOUBLE_EQ(MeanPercentileRank(ones), 50.0);
  const std::vector<GameOutcome> eighty(10, Ranked(80, 2000));
  EXPECT_DOUBLE_EQ(MeanPercentileRank(eighty), 96.0);
}

TEST(MeanPercentileRank, UniformRanksNearFifty) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> rank(1, 2000);
  std::vector<GameOutcome> games;
  for (int i = 0; i < 1000; ++i) games.push_back(Ranked(rank(rng), 2000));
  const double mpr = MeanPercentileRank(games);
  EXPECT_NEAR(mpr, 50.0, 2.0);
  std::shuffle(games.begin(), games.end(), rng);
  EXPECT_NEAR(MeanPercentileRank(games), mpr, 1e-9);
}

TEST(ChanceLevel, Examples) {
  EXPECT_DOUBLE_EQ(ChanceLevel(FixedCandidates{20}), 5.0);
  EXPECT_DOUBLE_EQ(ChanceLevel(Ranking{2000}), 50.0);
  std::vector<int> ks;
  for (int k = 5; k <= 12; ++k) ks.push_back(k);
  EXPECT_NEAR(ChanceLevelForCounts(ks), 11.76, 0.01);
  EXPECT_NEAR(ChanceLevelForCounts(ks, ChanceAggregation::kMeanOfChance), 12.748, 0.001);
}

std::vector<TurnPrediction> Predictions(const std::string& text) {
  std::istringstream in(text);
  return ParseOutcomes(in).turns;
}

TEST(PerTurnCurve, Examples) {
  std::vector<TurnPrediction> all_right;
  for (int t = 1; t <= 3; ++t) {
    all_right.push_back({"a", t, true, std::nullopt, 5});
    all_right.push_back({"b", t, true, std::nullopt, 5});
  }
  for (const auto& p : PerTurnCurve(all_right, CurveMode::kAccuracy)) EXPECT_EQ(p.value, 100.0);

  const std::vector<TurnPrediction> ranked = {{"a", 0, std::nullopt, 1000, 2000},
                                              {"a", 1, std::nullopt, 1, 2000}};
  const auto curve = PerTurnCurve(ranked, CurveMode::kMpr);
  ASSERT_EQ(curve.size(), 2u);
  EXPECT_EQ(curve[0], (CurvePoint{0, 50.0, 1}));
  EXPECT_EQ(curve[1], (CurvePoint{1, 99.95, 1}));
}

TEST(PerTurnCurve, MonotoneFlipFixture) {
  // Game g flips to correct at turn g; the curve climbs one game per turn.
  std::vector<TurnPrediction> preds;
  const int games = 5;
  for (int g = 1; g <= games; ++g) {
    for (int t = 1; t <= games; ++t) preds.push_back({std::to_string(g), t, t >= g, {}, 4});
  }
  const auto curve = PerTurnCurve(preds, CurveMode::kAccuracy);
  ASSERT_EQ(curve.size(), static_cast<size_t>(games));
  for (int t = 1; t <= games; ++t) {
    EXPECT_DOUBLE_EQ(curve[t - 1].value, 100.0 * t / games);
    EXPECT_EQ(curve[t - 1].n_games, static_cast<size_t>(games));
  }
}

TEST(PerTurnCurve, GamesLackingATurnContributeNothing) {
  const auto preds = Predictions(
      R"({"game_id": "a", "turn": 1, "correct": true, "n_candidates": 3})"
      "\n"
      R"({"game_id": "b", "turn": 1, "correct": false, "n_candidates": 3})"
      "\n"
      R"({"game_id": "a", "turn": 2, "correct": true, "n_candidates": 3})"
      "\n");
  const auto curve = PerTurnCurve(preds, CurveMode::kAccuracy);
  ASSERT_EQ(curve.size(), 2u);
  EXPECT_EQ(curve[0], (CurvePoint{1, 50.0, 2}));
  EXPECT_EQ(curve[1], (CurvePoint{2, 100.0, 1}));
  EXPECT_THROW(PerTurnCurve({}, CurveMode::kAccuracy), Error);
}

TEST(ParseOutcomes, SplitsGamesAndTurns) {
  std::istringstream in(
      R"({"game_id": "a", "correct": true, "n_candidates": 3})"
      "\n\n"
      R"({"game_id": "a", "turn": 0, "rank": 2, "n_candidates": 3})"
      "\n");
  const OutcomeSet set = ParseOutcomes(in);
  ASSERT_EQ(set.games.size(), 1u);
  ASSERT_EQ(set.turns.size(), 1u);
  EXPECT_EQ(set.turns[0].rank, 2);
  EXPECT_EQ(set.turns[0].turn_index, 0);
}

TEST(ParseOutcomes, RejectsBadLines) {
  for (const char* line : {R"({"game_id": "a", "n_candidates": 3})",
                           R"({"game_id": "a", "rank": 4, "n_candidates": 3})",
                           R"({"game_id": "a", "correct": true, "n_candidates": 1})",
                           R"({"game_id": "a", "turn": -1, "correct": true, "n_candidates": 3})",
                           "[1, 2]", "nope"}) {
    std::istringstream in(line);
    try {
      ParseOutcomes(in);
      ADD_FAILURE() << line;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kMalformedLine) << line;
    }
  }
}

}  // namespace
}  // namespace dialometer
