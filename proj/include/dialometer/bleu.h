#ifndef DIALOMETER_BLEU_H_
#define DIALOMETER_BLEU_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dialometer/tokenizer.h"

namespace dialometer {

enum class BleuSmoothing { kOff, kEpsilon };

struct BleuConfig {
  BleuSmoothing smoothing = BleuSmoothing::kEpsilon;
  // Stand-in numerator for an n-gram order with no clipped matches.
  double epsilon = 0.1;

  bool operator==(const BleuConfig&) const = default;
};

// "off" or "epsilon" / "epsilon:<value>".
std::optional<BleuConfig> ParseBleuConfig(std::string_view text);
std::string FormatBleuConfig(const BleuConfig& config);

inline constexpr int kBleuMaxOrder = 4;

// Multiset of the 1..4-grams of one id sequence.
class NgramProfile {
 public:
  struct Key {
    std::array<uint32_t, kBleuMaxOrder> ids{};
    uint8_t order = 0;

    auto operator<=>(const Key&) const = default;
  };

  explicit NgramProfile(std::span<const uint32_t> ids);

  size_t length() const { return length_; }
  // Number of n-grams of the given order (length - n + 1, or 0).
  int64_t Total(int order) const { return totals_[order - 1]; }
  int Count(const Key& key) const;
  const std::vector<std::pair<Key, int>>& counts() const { return counts_; }

 private:
  size_t length_ = 0;
  std::array<int64_t, kBleuMaxOrder> totals_{};
  std::vector<std::pair<Key, int>> counts_;  // sorted by key
};

// Sentence BLEU-4 of a candidate profile against reference profiles. Orders
// the candidate is too short for are left out of the geometric mean; the
// brevity penalty uses the closest reference length (shorter on ties).
double BleuFromProfiles(const NgramProfile& candidate,
                        std::span<const NgramProfile* const> references,
                        const BleuConfig& config);

// Throws EmptyInput for an empty candidate or an empty reference list.
double Bleu4(const TokenList& candidate, std::span<const TokenList> references,
             const BleuConfig& config = {});

}  // namespace dialometer

#endif  // DIALOMETER_BLEU_H_
