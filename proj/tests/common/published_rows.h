#ifndef DIALOMETER_TESTS_COMMON_PUBLISHED_ROWS_H_
#define DIALOMETER_TESTS_COMMON_PUBLISHED_ROWS_H_

#include <optional>
#include <string>
#include <vector>

#include "dialometer/textmetrics.h"

namespace dialometer::testing {

// Published metric cells for the evaluated systems and their human anchors.
struct PublishedRow {
  std::string system;
  std::string anchor;
  std::optional<double> gr, lrd, mo, grq, h;
  double ld;
};

inline MetricReport Report(const std::string& id, std::optional<double> gr,
                           std::optional<double> lrd, std::optional<double> mo,
                           std::optional<double> grq, std::optional<double> h) {
  MetricReport r;
  r.corpus_id = id;
  r.gr = gr;
  r.lrd = lrd;
  r.mo = mo;
  r.grq = grq;
  r.h = h;
  return r;
}

inline MetricReport GuessWhichHuman() {
  return Report("guesswhich-human", 27.69, std::nullopt, 0.07, 0.78, 4.55);
}
inline MetricReport GuessWhatHuman() {
  return Report("guesswhat-human", 72.98, std::nullopt, 0.03, 0.8, 4.21);
}
inline MetricReport MutualFriendsHuman() {
  return Report("mutualfriends-human", 65.2, std::nullopt, std::nullopt, std::nullopt, 4.57);
}

inline const std::vector<PublishedRow>& PublishedRows() {
  static const std::vector<PublishedRow> rows = {
      {"D-SL", "guesswhich", 6.46, 39.93, 0.51, 93.01, 4.03, 0.58},
      {"D-RL", "guesswhich", 9.04, 41.83, 0.41, 81.17, 3.92, 0.52},
      {"ReCap", "guesswhich", 14.4, 42.76, 0.23, 55.37, 4.19, 0.38},
      {"GDSE-SL", "guesswhat", 34.73, 42.1, 0.39, 64.96, 3.52, 0.46},
      {"GDSE-CL", "guesswhat", 36.35, 42.41, 0.23, 36.79, 3.66, 0.36},
      {"RL", "guesswhat", 12.67, 34.51, 0.46, 96.54, 2.42, 0.67},
      {"DynoNet", "mutualfriends", 51.15, std::nullopt, std::nullopt, std::nullopt, 3.91, 0.18},
  };
  return rows;
}

inline MetricReport AnchorFor(const std::string& anchor) {
  if (anchor == "guesswhich") return GuessWhichHuman();
  if (anchor == "guesswhat") return GuessWhatHuman();
  return MutualFriendsHuman();
}

}  // namespace dialometer::testing

#endif  // DIALOMETER_TESTS_COMMON_PUBLISHED_ROWS_H_
