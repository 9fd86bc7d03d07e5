#include "dialometer/corpus.h"

#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "dialometer/error.h"
#include "test_util.h"

namespace dialometer {
namespace {

using testing::CorpusFromJsonl;

const char* kTwoGames =
    R"({"game_id": "b", "candidates": [{"id": "o1", "category": "dog", "bbox": [1, 2, 3, 4]}, {"id": "o2"}], "target_id": "o1", "turns": [{"speaker": "Q", "text": "Is it a Dog?"}, {"speaker": "A", "text": "yes"}], "status": "success", "embedding": [0.5]})"
    "\n"
    R"({"game_id": "a", "turns": [{"speaker": "Q", "text": "red?", "pos": ["ADJ"]}, {"speaker": "Q", "text": "left"}], "status": "incomplete"})"
    "\n";

ErrorCode CodeOf(const std::string& jsonl) {
  try {
    CorpusFromJsonl(jsonl);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

TEST(Corpus, ParsesAndTokenizes) {
  const Corpus c = CorpusFromJsonl(kTwoGames);
  ASSERT_EQ(c.size(), 2u);
  const GameRecord& b = c.records()[0];
  EXPECT_EQ(b.game_id, "b");
  EXPECT_EQ(b.turns[0].tokens, (TokenList{"is", "it", "a", "dog"}));
  EXPECT_EQ(b.turns[1].speaker, Speaker::kAnswerer);
  ASSERT_NE(b.Target(), nullptr);
  EXPECT_EQ(*b.Target()->category, "dog");
  EXPECT_EQ(b.status, GameStatus::kSuccess);
  EXPECT_EQ(c.QuestionCounts(), (std::vector<int>{1, 2}));
  EXPECT_EQ(c.records()[1].turns[0].pos_tags, (std::vector<std::string>{"ADJ"}));
}

TEST(Corpus, IdOrderAndFind) {
  const Corpus c = CorpusFromJsonl(kTwoGames);
  EXPECT_EQ(c.IdOrder(), (std::vector<size_t>{1, 0}));
  EXPECT_EQ(c.Find("a"), 1u);
  EXPECT_EQ(c.Find("b"), 0u);
  EXPECT_FALSE(c.Find("c").has_value());
}

TEST(Corpus, StatusFilter) {
  const Corpus played = CorpusFromJsonl(kTwoGames, "c", StatusFilter::Played());
  ASSERT_EQ(played.size(), 1u);
  EXPECT_EQ(played.records()[0].game_id, "b");
  EXPECT_EQ(ParseStatusFilter("played"), StatusFilter::Played());
  EXPECT_EQ(ParseStatusFilter("all"), StatusFilter::All());
  const auto some = ParseStatusFilter("success,failure");
  ASSERT_TRUE(some);
  EXPECT_FALSE(some->Accepts(GameStatus::kIncomplete));
  EXPECT_FALSE(some->Accepts(GameStatus::kUnknown));
  EXPECT_FALSE(ParseStatusFilter("winning").has_value());
}

TEST(Corpus, RoundTripPreservesRecordsAndExtras) {
  const Corpus c = CorpusFromJsonl(kTwoGames);
  std::ostringstream out;
  WriteCorpus(out, c);
  const Corpus again = CorpusFromJsonl(out.str());
  EXPECT_EQ(c, again);
  EXPECT_NE(out.str().find("\"embedding\""), std::string::npos);
  // Writing twice is byte-stable.
  std::ostringstream out2;
  WriteCorpus(out2, again);
  EXPECT_EQ(out.str(), out2.str());
}

TEST(Corpus, Errors) {
  EXPECT_EQ(CodeOf("{not json\n"), ErrorCode::kMalformedLine);
  EXPECT_EQ(CodeOf(R"({"game_id": "x", "turns": []})"), ErrorCode::kEmptyDialogue);
  EXPECT_EQ(CodeOf(R"({"game_id": "x", "candidates": [{"id": "a"}], "target_id": "b", "turns": [{"speaker": "Q", "text": "hi"}]})"),
            ErrorCode::kTargetNotInCandidates);
  EXPECT_EQ(CodeOf(R"({"game_id": "x", "candidates": [{"id": "a"}, {"id": "a"}], "turns": [{"speaker": "Q", "text": "hi"}]})"),
            ErrorCode::kMalformedLine);
  EXPECT_EQ(CodeOf(R"({"game_id": "x", "turns": [{"speaker": "Q", "text": "hi there", "pos": ["X"]}]})"),
            ErrorCode::kMalformedLine);
  EXPECT_EQ(CodeOf(R"({"game_id": "x", "turns": [{"speaker": "B", "text": "hi"}]})"),
            ErrorCode::kMalformedLine);
  const std::string dup = R"({"game_id": "x", "turns": [{"speaker": "Q", "text": "hi"}]})";
  EXPECT_EQ(CodeOf(dup + "\n" + dup + "\n"), ErrorCode::kDuplicateGameId);
}

TEST(Corpus, ErrorMessageNamesLine) {
  try {
    CorpusFromJsonl(std::string(R"({"game_id": "x", "turns": [{"speaker": "Q", "text": "hi"}]})") +
                    "\n\n{oops\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
  }
}

TEST(Corpus, DuplicatesCaughtEvenWhenFiltered) {
  const std::string a = R"({"game_id": "x", "status": "incomplete", "turns": [{"speaker": "Q", "text": "hi"}]})";
  const std::string b = R"({"game_id": "x", "turns": [{"speaker": "Q", "text": "hi"}]})";
  EXPECT_THROW(CorpusFromJsonl(a + "\n" + b + "\n", "c", StatusFilter::Played()), Error);
}

TEST(Corpus, LoadMissingFile) {
  try {
    LoadCorpus("/nonexistent/file.jsonl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(Corpus, LoadUsesStemAsId) {
  const Corpus c = LoadCorpus(testing::FixtureDir("guesswhat") / "human.jsonl");
  EXPECT_EQ(c.id(), "human");
  EXPECT_EQ(c.size(), 32u);
}

Corpus NumberedCorpus(int n) {
  std::vector<GameRecord> records;
  for (int i = 0; i < n; ++i) {
    GameRecord r;
    r.game_id = "g" + std::to_string(1000 + i);
    r.turns.push_back(Turn{Speaker::kQuestioner, "q " + std::to_string(i)});
    records.push_back(std::move(r));
  }
  return Corpus("n", std::move(records));
}

TEST(Subsample, SizeOrderAndDeterminism) {
  const Corpus c = NumberedCorpus(101);
  const Corpus s1 = Subsample(c, 0.25, 7);
  const Corpus s2 = Subsample(c, 0.25, 7);
  EXPECT_EQ(s1, s2);
  EXPECT_EQ(s1.size(), 26u);  // ceil(0.25 * 101)
  std::set<std::string> ids;
  for (size_t i = 0; i < s1.size(); ++i) {
    ids.insert(s1.records()[i].game_id);
    if (i > 0) EXPECT_LT(s1.records()[i - 1].game_id, s1.records()[i].game_id);
  }
  EXPECT_EQ(ids.size(), s1.size());
  EXPECT_NE(Subsample(c, 0.25, 8), s1);
  EXPECT_EQ(Subsample(c, 1.0, 3), c);
}

TEST(Subsample, RejectsBadFraction) {
  const Corpus c = NumberedCorpus(3);
  EXPECT_THROW(Subsample(c, 0.0, 1), Error);
  EXPECT_THROW(Subsample(c, 1.5, 1), Error);
}

TEST(Corpus, ConstructorValidates) {
  GameRecord r;
  r.game_id = "x";
  EXPECT_THROW(Corpus("c", {r}), Error);
}

}  // namespace
}  // namespace dialometer
