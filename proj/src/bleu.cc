#include "dialometer/bleu.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <unordered_map>

#include <fmt/format.h>

#include "dialometer/error.h"

namespace dialometer {

std::optional<BleuConfig> ParseBleuConfig(std::string_view text) {
  if (text == "off") return BleuConfig{BleuSmoothing::kOff, 0.1};
  if (text == "epsilon") return BleuConfig{};
  constexpr std::string_view kPrefix = "epsilon:";
  if (text.substr(0, kPrefix.size()) == kPrefix) {
    const std::string value(text.substr(kPrefix.size()));
    char* end = nullptr;
    const double eps = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || !(eps > 0.0)) return std::nullopt;
    return BleuConfig{BleuSmoothing::kEpsilon, eps};
  }
  return std::nullopt;
}

std::string FormatBleuConfig(const BleuConfig& config) {
  if (config.smoothing == BleuSmoothing::kOff) return "off";
  return fmt::format("epsilon:{}", config.epsilon);
}

NgramProfile::NgramProfile(std::span<const uint32_t> ids) : length_(ids.size()) {
  for (int n = 1; n <= kBleuMaxOrder; ++n) {
    if (ids.size() < static_cast<size_t>(n)) break;
    totals_[n - 1] = static_cast<int64_t>(ids.size()) - n + 1;
    for (size_t i = 0; i + n <= ids.size(); ++i) {
      Key key;
      key.order = static_cast<uint8_t>(n);
      std::copy_n(ids.begin() + i, n, key.ids.begin());
      counts_.emplace_back(key, 1);
    }
  }
  std::sort(counts_.begin(), counts_.end());
  // Collapse runs of equal keys.
  size_t out = 0;
  for (size_t i = 0; i < counts_.size(); ++i) {
    if (out > 0 && counts_[out - 1].first == counts_[i].first) {
      ++counts_[out - 1].second;
    } else {
      counts_[out++] = counts_[i];
    }
  }
  counts_.resize(out);
}

int NgramProfile::Count(const Key& key) const {
  auto it = std::lower_bound(counts_.begin(), counts_.end(), key,
                             [](const auto& entry, const Key& k) { return entry.first < k; });
  return (it != counts_.end() && it->first == key) ? it->second : 0;
}

double BleuFromProfiles(const NgramProfile& candidate,
                        std::span<const NgramProfile* const> references,
                        const BleuConfig& config) {
  std::array<int64_t, kBleuMaxOrder> clipped{};
  for (const auto& [key, count] : candidate.counts()) {
    int max_ref = 0;
    for (const NgramProfile* ref : references) max_ref = std::max(max_ref, ref->Count(key));
    clipped[key.order - 1] += std::min(count, max_ref);
  }

  double log_sum = 0.0;
  int orders = 0;
  for (int n = 1; n <= kBleuMaxOrder; ++n) {
    const int64_t total = candidate.Total(n);
    if (total == 0) continue;
    double numerator = static_cast<double>(clipped[n - 1]);
    if (clipped[n - 1] == 0) {
      if (config.smoothing == BleuSmoothing::kOff) return 0.0;
      numerator = config.epsilon;
    }
    log_sum += std::log(numerator / static_cast<double>(total));
    ++orders;
  }
  if (orders == 0) return 0.0;

  const auto c = static_cast<double>(candidate.length());
  double r = 0.0;
  double best_diff = INFINITY;
  for (const NgramProfile* ref : references) {
    const auto len = static_cast<double>(ref->length());
    const double diff = std::abs(len - c);
    if (diff < best_diff || (diff == best_diff && len < r)) {
      best_diff = diff;
      r = len;
    }
  }
  const double brevity = c < r ? std::exp(1.0 - r / c) : 1.0;
  return std::min(1.0, brevity * std::exp(log_sum / orders));
}

double Bleu4(const TokenList& candidate, std::span<const TokenList> references,
             const BleuConfig& config) {
  if (candidate.empty()) throw Error(ErrorCode::kEmptyInput, "EmptyInput: empty BLEU candidate");
  if (references.empty()) throw Error(ErrorCode::kEmptyInput, "EmptyInput: no BLEU references");

  std::unordered_map<std::string_view, uint32_t> ids;
  auto intern = [&ids](const TokenList& tokens) {
    std::vector<uint32_t> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
      out.push_back(ids.emplace(t, static_cast<uint32_t>(ids.size())).first->second);
    }
    return out;
  };
  const NgramProfile cand(intern(candidate));
  std::vector<NgramProfile> refs;
  refs.reserve(references.size());
  for (const auto& ref : references) refs.emplace_back(intern(ref));
  std::vector<const NgramProfile*> ref_ptrs;
  for (const auto& ref : refs) ref_ptrs.push_back(&ref);
  return BleuFromProfiles(cand, ref_ptrs, config);
}

}  // namespace dialometer
