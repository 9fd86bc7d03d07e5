#include "dialometer/bleu.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dialometer/error.h"
#include "dialometer/tokenizer.h"

namespace dialometer {
namespace {

double B(const std::string& cand, std::vector<std::string> refs, BleuConfig cfg = {}) {
  std::vector<TokenList> r;
  for (const auto& s : refs) r.push_back(Tokenize(s));
  return Bleu4(Tokenize(cand), r, cfg);
}

const BleuConfig kOff{BleuSmoothing::kOff, 0.0};

TEST(Bleu, HandComputedSmoothedValue) {
  // p = 3/4, 2/3, 1/2, 0/1 -> the 4-gram precision becomes 0.1 / 1.
  EXPECT_NEAR(B("the cat sat down", {"the cat sat there"}), std::pow(0.025, 0.25), 1e-12);
  EXPECT_EQ(B("the cat sat down", {"the cat sat there"}, kOff), 0.0);
}

TEST(Bleu, IdenticalSentencesScoreOne) {
  EXPECT_DOUBLE_EQ(B("is it the red car", {"is it the red car"}), 1.0);
  EXPECT_DOUBLE_EQ(B("is it the red car", {"is it the red car"}, kOff), 1.0);
}

TEST(Bleu, ShortCandidateSkipsMissingOrders) {
  // Only unigram and bigram precisions exist; brevity penalty exp(1 - 3/2).
  EXPECT_NEAR(B("a b", {"a b c"}), std::exp(-0.5), 1e-12);
}

TEST(Bleu, ClosestReferenceLengthPrefersShorterOnTies) {
  EXPECT_DOUBLE_EQ(B("a b c d", {"a b c d e", "a b c"}), 1.0);
  EXPECT_NEAR(B("a b c d", {"a b c d e"}), std::exp(1.0 - 5.0 / 4.0), 1e-12);
}

TEST(Bleu, ClipsRepeatedNgrams) {
  // "the the the the" vs "the cat": unigram precision 1/4, others zero.
  const double v = B("the the the the", {"the cat"});
  const double expected = std::pow(0.25 * (0.1 / 3) * (0.1 / 2) * (0.1 / 1), 0.25);
  EXPECT_NEAR(v, expected, 1e-12);
}

TEST(Bleu, EmptyInputs) {
  const std::vector<TokenList> refs = {{"a"}};
  EXPECT_THROW(Bleu4({}, refs), Error);
  EXPECT_THROW(Bleu4({"a"}, std::vector<TokenList>{}), Error);
}

TEST(Bleu, PropertyBoundedAndOrderInvariantInReferences) {
  std::mt19937 rng(5);
  const std::vector<std::string> words = {"is", "it", "a", "dog", "red", "left", "the"};
  auto sentence = [&] {
    TokenList s(1 + rng() % 7);
    for (auto& t : s) t = words[rng() % words.size()];
    return s;
  };
  for (int i = 0; i < 500; ++i) {
    const TokenList cand = sentence();
    std::vector<TokenList> refs = {sentence(), sentence(), sentence()};
    const double v = Bleu4(cand, refs);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
    std::reverse(refs.begin(), refs.end());
    EXPECT_EQ(v, Bleu4(cand, refs));
    // Smoothing never lowers the score.
    EXPECT_LE(Bleu4(cand, refs, kOff), v + 1e-15);
    // Adding the candidate itself as a reference gives a perfect match.
    refs.push_back(cand);
    EXPECT_DOUBLE_EQ(Bleu4(cand, refs), 1.0);
  }
}

TEST(BleuConfig, ParseAndFormat) {
  EXPECT_EQ(ParseBleuConfig("off")->smoothing, BleuSmoothing::kOff);
  EXPECT_EQ(ParseBleuConfig("epsilon"), BleuConfig{});
  EXPECT_DOUBLE_EQ(ParseBleuConfig("epsilon:0.01")->epsilon, 0.01);
  EXPECT_FALSE(ParseBleuConfig("laplace").has_value());
  EXPECT_FALSE(ParseBleuConfig("epsilon:-1").has_value());
  EXPECT_EQ(FormatBleuConfig({}), "epsilon:0.1");
  EXPECT_EQ(FormatBleuConfig(kOff), "off");
}

}  // namespace
}  // namespace dialometer
