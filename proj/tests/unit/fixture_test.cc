#include <gtest/gtest.h>

#include "common/fixture_check.h"
#include "test_util.h"

namespace dialometer {
namespace {

class FixtureTest : public ::testing::TestWithParam<std::string> {};

TEST_P(FixtureTest, MatchesNaiveReference) {
  testing::FixtureChecker checker(testing::FixtureDir(GetParam()));
  const auto failures = checker.Run();
  for (const auto& f : failures) ADD_FAILURE() << f;
  EXPECT_GT(checker.comparisons(), 50u);
}

INSTANTIATE_TEST_SUITE_P(Fixtures, FixtureTest,
                         ::testing::Values("guesswhat", "guesswhich", "mutualfriends"));

}  // namespace
}  // namespace dialometer
