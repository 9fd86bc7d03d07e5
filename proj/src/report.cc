#include "dialometer/report.h"

#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "dialometer/error.h"

namespace dialometer {
namespace {

using nlohmann::json;

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool ParseBool(std::string_view value, std::string_view key) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw Error(ErrorCode::kInvalidArgument,
              fmt::format("config {}: expected true/false, got \"{}\"", key, value));
}

int64_t ParseInteger(std::string_view value, std::string_view key) {
  const std::string text(value);
  char* end = nullptr;
  errno = 0;
  const long long parsed = std::strtoll(text.c_str(), &end, 10);
  if (text.empty() || *end != '\0' || errno != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("config {}: expected an integer, got \"{}\"", key, value));
  }
  return parsed;
}

void PutOptional(json& j, const char* key, const std::optional<double>& value) {
  if (value) j[key] = RoundSignificant(*value);
}

std::optional<double> GetOptional(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) {
    throw Error(ErrorCode::kSchema, fmt::format("SchemaError: \"{}\" must be a number", key));
  }
  return it->get<double>();
}

}  // namespace

void ApplyConfigSetting(RunConfig& config, std::string_view key, std::string_view value) {
  if (key == "lowercase") {
    config.tokenizer.lowercase = ParseBool(value, key);
  } else if (key == "strip_punctuation") {
    config.tokenizer.strip_punctuation = ParseBool(value, key);
  } else if (key == "unicode_nfc") {
    config.tokenizer.unicode_nfc = ParseBool(value, key);
  } else if (key == "stopwords") {
    config.stopword_path = std::string(value);
  } else if (key == "smoothing") {
    auto bleu = ParseBleuConfig(value);
    if (!bleu) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("config smoothing: expected off or epsilon[:value], got \"{}\"",
                              value));
    }
    config.bleu = *bleu;
  } else if (key == "threshold") {
    const auto t = ParseInteger(value, key);
    if (t < 1) throw Error(ErrorCode::kInvalidArgument, "config threshold must be at least 1");
    config.rare_threshold = static_cast<int>(t);
  } else if (key == "scope") {
    auto scope = ParseSpeakerScope(value);
    if (!scope) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("config scope: expected questioner or both, got \"{}\"", value));
    }
    config.scope = *scope;
  } else if (key == "status") {
    if (value == "auto") {
      config.status_filter.reset();
      return;
    }
    auto filter = ParseStatusFilter(value);
    if (!filter) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("config status: cannot parse \"{}\"", value));
    }
    config.status_filter = *filter;
  } else if (key == "format") {
    if (value != "json" && value != "csv") {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("config format: expected json or csv, got \"{}\"", value));
    }
    config.output_format = std::string(value);
  } else if (key == "seed") {
    config.seed = static_cast<uint64_t>(ParseInteger(value, key));
  } else if (key == "mpr_base") {
    if (value == "n") {
      config.percentile_base = PercentileBase::kCandidates;
    } else if (value == "n-1") {
      config.percentile_base = PercentileBase::kCandidatesMinusOne;
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("config mpr_base: expected n or n-1, got \"{}\"", value));
    }
  } else if (key == "task") {
    config.task = std::string(value);
  } else {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown config key \"{}\"", key));
  }
}

void ApplyConfigText(RunConfig& config, std::string_view text, std::string_view source_name) {
  size_t line_no = 0;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("{}:{}: expected key = value", source_name, line_no));
    }
    try {
      ApplyConfigSetting(config, Trim(line.substr(0, eq)), Trim(line.substr(eq + 1)));
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("{}:{}: {}", source_name, line_no, e.what()));
    }
  }
}

void ApplyConfigFile(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("{}: cannot open config file", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  ApplyConfigText(config, buffer.str(), path.string());
}

StatusFilter GeneratedStatusFilter(const RunConfig& config) {
  return config.status_filter.value_or(StatusFilter::All());
}

StatusFilter HumanStatusFilter(const RunConfig& config) {
  return config.status_filter.value_or(StatusFilter::Played());
}

double RoundSignificant(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) return value;
  return std::strtod(fmt::format("{:.{}g}", value, digits).c_str(), nullptr);
}

std::string FormatNumber(double value) { return fmt::format("{:.6g}", value); }

std::string Sha256Hex(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("{}: cannot open", path.string()));
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  std::array<char, 1 << 16> buffer{};
  while (in) {
    in.read(buffer.data(), buffer.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buffer.data(), static_cast<size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx, digest.data(), &length);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

json ToJson(const RunConfig& config) {
  json j = json::object();
  j["lowercase"] = config.tokenizer.lowercase;
  j["strip_punctuation"] = config.tokenizer.strip_punctuation;
  j["unicode_nfc"] = config.tokenizer.unicode_nfc;
  j["stopwords"] = config.stopword_path
                       ? json(std::filesystem::path(*config.stopword_path).filename().string())
                       : json("builtin");
  j["smoothing"] = FormatBleuConfig(config.bleu);
  j["threshold"] = config.rare_threshold;
  j["scope"] = SpeakerScopeName(config.scope);
  j["status"] = config.status_filter ? FormatStatusFilter(*config.status_filter) : "auto";
  j["format"] = config.output_format.empty() ? "default" : config.output_format;
  j["seed"] = config.seed;
  j["mpr_base"] = config.percentile_base == PercentileBase::kCandidates ? "n" : "n-1";
  j["task"] = config.task;
  return j;
}

json ToJson(const MetricReport& report) {
  json j = json::object();
  j["corpus_id"] = report.corpus_id;
  j["n_dialogues"] = report.n_dialogues;
  PutOptional(j, "h", report.h);
  PutOptional(j, "mo", report.mo);
  PutOptional(j, "grq", report.grq);
  PutOptional(j, "gr", report.gr);
  PutOptional(j, "lrd", report.lrd);
  json extras = json::object();
  for (const auto& [key, value] : report.extras) extras[key] = RoundSignificant(value);
  j["extras"] = std::move(extras);
  return j;
}

json ToJson(const LdBreakdown& breakdown) {
  json per_metric = json::object();
  for (const auto& [metric, value] : breakdown.per_metric) {
    per_metric[std::string(MetricName(metric))] = RoundSignificant(value);
  }
  return json{{"ld", RoundSignificant(breakdown.ld)},
              {"n_metrics_used", breakdown.n_metrics_used},
              {"per_metric", std::move(per_metric)}};
}

json ToJson(const RareWordReport& report) {
  json j = json::object();
  j["threshold"] = report.threshold;
  j["rare_set_size"] = report.rare_set_size;
  j["rare_fraction_of_vocab"] = RoundSignificant(report.rare_fraction_of_vocab);
  j["n_games"] = report.n_games;
  j["games_with_rare"] = RoundSignificant(report.games_with_rare);
  j["rare_occurrences"] = report.rare_occurrences;
  PutOptional(j, "mean_turns_with_rare", report.mean_turns_with_rare);
  PutOptional(j, "mean_turns_without_rare", report.mean_turns_without_rare);
  PutOptional(j, "acc_overall", report.acc_overall);
  PutOptional(j, "acc_with_rare", report.acc_with_rare);
  PutOptional(j, "acc_without_rare", report.acc_without_rare);
  PutOptional(j, "rare_words_in_failed_games", report.rare_words_in_failed_games);
  PutOptional(j, "rare_used_by_generated", report.rare_used_by_generated);
  if (report.pos_distribution) {
    json pos = json::object();
    for (const auto& [tag, share] : *report.pos_distribution) pos[tag] = RoundSignificant(share);
    j["pos_distribution"] = std::move(pos);
  }
  return j;
}

json ToJson(const DifficultyBucket& bucket) {
  json j = json::object();
  j["min_turns"] = bucket.min_turns;
  j["max_turns"] = bucket.max_turns ? json(*bucket.max_turns) : json(nullptr);
  j["n_games"] = bucket.n_games;
  PutOptional(j, "mean_distractors", bucket.mean_distractors);
  PutOptional(j, "mean_same_category_distractors", bucket.mean_same_category_distractors);
  PutOptional(j, "mean_rare_words", bucket.mean_rare_words);
  PutOptional(j, "accuracy", bucket.accuracy);
  return j;
}

json ToJson(const std::vector<CurvePoint>& curve) {
  json points = json::array();
  for (const auto& p : curve) {
    points.push_back(
        {{"turn", p.turn_index}, {"value", RoundSignificant(p.value)}, {"n_games", p.n_games}});
  }
  return points;
}

MetricReport MetricReportFromJson(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kSchema, "SchemaError: metric report is not an object");
  MetricReport report;
  if (auto it = j.find("corpus_id"); it != j.end() && it->is_string()) {
    report.corpus_id = it->get<std::string>();
  }
  if (auto it = j.find("n_dialogues"); it != j.end() && it->is_number_integer()) {
    report.n_dialogues = it->get<int64_t>();
  }
  report.h = GetOptional(j, "h");
  report.mo = GetOptional(j, "mo");
  report.grq = GetOptional(j, "grq");
  report.gr = GetOptional(j, "gr");
  report.lrd = GetOptional(j, "lrd");
  if (auto it = j.find("extras"); it != j.end() && it->is_object()) {
    for (const auto& [key, value] : it->items()) {
      if (value.is_number()) report.extras[key] = value.get<double>();
    }
  }
  return report;
}

}  // namespace dialometer
