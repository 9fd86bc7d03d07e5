#include "dialometer/cli.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "dialometer/analysis.h"
#include "dialometer/corpus.h"
#include "dialometer/divergence.h"
#include "dialometer/error.h"
#include "dialometer/report.h"
#include "dialometer/tasksuccess.h"
#include "dialometer/textmetrics.h"
#include "dialometer/vocabulary.h"

namespace dialometer {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Raw flag values; settings that map onto RunConfig keys are applied on top
// of the DIALOMETER_CONFIG file.
struct Flags {
  std::string gen, human, train, outcomes, manifest, out;
  std::string stopwords, smoothing, scope, format, status, task, mpr_base;
  std::string threshold, seed;
  std::string edges;
  std::string label;
  std::vector<std::string> positional;
  double fraction = 1.0;
  int jobs = 1;
  int min_count = 1;
};

struct Command {
  std::string name;
  CLI::App* app = nullptr;
  std::string default_format;
};

void AddConfigFlags(CLI::App* app, Flags& f) {
  app->add_option("--stopwords", f.stopwords, "Stopword file (one token per line)");
  app->add_option("--smoothing", f.smoothing, "BLEU smoothing: off | epsilon[:value]");
  app->add_option("--scope", f.scope, "Speaker scope: questioner | both");
  app->add_option("--format", f.format, "Output format: json | csv");
  app->add_option("--status", f.status,
                  "Status filter: auto | all | played | comma list of statuses");
  app->add_option("--task", f.task, "Task tag recorded in the report");
  app->add_option("--mpr-base", f.mpr_base, "Percentile denominator: n | n-1");
  app->add_option("--threshold", f.threshold, "Rare-word threshold (strict <)");
  app->add_option("--seed", f.seed, "Seed for randomized steps");
  app->add_option("--jobs", f.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app->add_option("--out", f.out, "Output file (default: stdout)");
}

RunConfig ResolveConfig(const Flags& f) {
  RunConfig config;
  if (const char* path = std::getenv("DIALOMETER_CONFIG"); path != nullptr && *path != '\0') {
    ApplyConfigFile(config, path);
  }
  const std::vector<std::pair<const char*, const std::string*>> settings = {
      {"stopwords", &f.stopwords}, {"smoothing", &f.smoothing}, {"scope", &f.scope},
      {"format", &f.format},       {"status", &f.status},       {"task", &f.task},
      {"mpr_base", &f.mpr_base},   {"threshold", &f.threshold}, {"seed", &f.seed},
  };
  for (const auto& [key, value] : settings) {
    if (!value->empty()) ApplyConfigSetting(config, key, *value);
  }
  return config;
}

void RequirePath(const std::string& value, const char* flag) {
  if (value.empty()) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("{} is required", flag));
  }
}

json InputEntry(const fs::path& path) {
  return json{{"file", path.filename().string()}, {"sha256", Sha256Hex(path)}};
}

StopwordSet ResolveStopwords(const RunConfig& config) {
  return config.stopword_path ? LoadStopwords(*config.stopword_path) : DefaultStopwords();
}

void Emit(const Flags& f, std::ostream& out, const std::string& text) {
  if (f.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(f.out, std::ios::binary);
  if (!file) throw Error(ErrorCode::kIo, fmt::format("{}: cannot open for writing", f.out));
  file << text;
  if (!file) throw Error(ErrorCode::kIo, fmt::format("{}: write failed", f.out));
}

std::string Cell(const std::optional<double>& value) {
  return value ? FormatNumber(*value) : "-";
}

json NullableNumber(const std::optional<double>& value) {
  return value ? json(RoundSignificant(*value)) : json(nullptr);
}

json ReportEnvelope(const std::string& command, const RunConfig& config, json inputs) {
  json j = json::object();
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["config"] = ToJson(config);
  j["inputs"] = std::move(inputs);
  return j;
}

// Task-success summary of an outcomes file.
json TaskSuccessJson(const OutcomeSet& outcomes, PercentileBase base) {
  json ts = json::object();
  const auto& games = outcomes.games;
  if (!games.empty()) {
    ts["n_games"] = games.size();
    if (std::all_of(games.begin(), games.end(), [](const auto& o) { return o.correct; })) {
      ts["acc"] = RoundSignificant(Accuracy(games));
    }
    if (std::all_of(games.begin(), games.end(), [](const auto& o) { return o.rank; })) {
      ts["mpr"] = RoundSignificant(MeanPercentileRank(games, base));
    }
  }
  const auto& turns = outcomes.turns;
  if (!turns.empty()) {
    json per_turn = json::object();
    if (std::all_of(turns.begin(), turns.end(), [](const auto& p) { return p.correct; })) {
      per_turn["accuracy"] = ToJson(PerTurnCurve(turns, CurveMode::kAccuracy, base));
    }
    if (std::all_of(turns.begin(), turns.end(), [](const auto& p) { return p.rank; })) {
      per_turn["mpr"] = ToJson(PerTurnCurve(turns, CurveMode::kMpr, base));
    }
    ts["per_turn"] = std::move(per_turn);
  }
  return ts;
}

struct TableRow {
  std::string system;
  MetricReport metrics;
  std::optional<double> ld;
  std::optional<double> ts;
};

const std::vector<std::string>& TableColumns() {
  static const std::vector<std::string> kColumns = {"H", "MO", "GRQ", "GR", "LRd", "LD", "TS"};
  return kColumns;
}

std::vector<std::optional<double>> RowValues(const TableRow& row) {
  return {row.metrics.h, row.metrics.mo, row.metrics.grq, row.metrics.gr,
          row.metrics.lrd, row.ld, row.ts};
}

std::string RenderTable(const std::vector<TableRow>& rows, const std::string& format,
                        const std::string& task) {
  if (format == "csv") {
    std::string text = "system";
    for (const auto& c : TableColumns()) text += "," + c;
    text += "\n";
    for (const auto& row : rows) {
      text += row.system;
      for (const auto& v : RowValues(row)) text += "," + Cell(v);
      text += "\n";
    }
    return text;
  }
  json out = json::object();
  out["schema_version"] = kSchemaVersion;
  out["command"] = "table";
  out["task"] = task;
  json list = json::array();
  for (const auto& row : rows) {
    json r = json::object();
    r["system"] = row.system;
    const auto values = RowValues(row);
    for (size_t i = 0; i < values.size(); ++i) r[TableColumns()[i]] = NullableNumber(values[i]);
    list.push_back(std::move(r));
  }
  out["rows"] = std::move(list);
  return out.dump(2) + "\n";
}

int CmdEval(const Flags& f, RunConfig config, std::ostream& out) {
  RequirePath(f.gen, "--gen");
  json inputs = json::object();
  const Corpus gen = LoadCorpus(f.gen, config.tokenizer, GeneratedStatusFilter(config));
  inputs["gen"] = InputEntry(f.gen);

  std::optional<Corpus> human;
  if (!f.human.empty()) {
    human = LoadCorpus(f.human, config.tokenizer, HumanStatusFilter(config));
    inputs["human"] = InputEntry(f.human);
  }
  std::optional<Vocabulary> vocab;
  if (!f.train.empty()) {
    const Corpus train = LoadCorpus(f.train, config.tokenizer, HumanStatusFilter(config));
    vocab = BuildVocabulary(train, config.scope, f.min_count);
    inputs["train"] = InputEntry(f.train);
  }
  std::optional<OutcomeSet> outcomes;
  if (!f.outcomes.empty()) {
    outcomes = LoadOutcomes(f.outcomes);
    inputs["outcomes"] = InputEntry(f.outcomes);
  }
  if (config.stopword_path) inputs["stopwords"] = InputEntry(*config.stopword_path);
  const StopwordSet stopwords = ResolveStopwords(config);

  const EvalOptions options{config.bleu, config.scope, f.jobs};
  const Vocabulary* vocab_ptr = vocab ? &*vocab : nullptr;
  const MetricReport report =
      EvaluateCorpus(gen, human ? &*human : nullptr, vocab_ptr, stopwords, options);
  std::optional<MetricReport> human_report;
  std::optional<LdBreakdown> ld;
  if (human) {
    human_report = EvaluateCorpus(*human, nullptr, vocab_ptr, stopwords, options);
    ld = LinguisticDivergence(report, *human_report);
  }
  json ts = outcomes ? TaskSuccessJson(*outcomes, config.percentile_base) : json(nullptr);

  if (config.output_format.empty()) config.output_format = "json";
  if (config.output_format == "csv") {
    std::vector<TableRow> rows;
    std::optional<double> ts_value;
    if (ts.is_object() && ts.contains("acc")) {
      ts_value = ts["acc"].get<double>();
    } else if (ts.is_object() && ts.contains("mpr")) {
      ts_value = ts["mpr"].get<double>();
    }
    rows.push_back({report.corpus_id, report, ld ? std::optional(ld->ld) : std::nullopt,
                    ts_value});
    if (human_report) rows.push_back({human_report->corpus_id, *human_report, {}, {}});
    Emit(f, out, RenderTable(rows, "csv", config.task));
    return 0;
  }

  json j = ReportEnvelope("eval", config, std::move(inputs));
  j["corpus"] = ToJson(report);
  if (human_report) j["human"] = ToJson(*human_report);
  if (ld) j["ld"] = ToJson(*ld);
  if (!ts.is_null()) j["ts"] = std::move(ts);
  Emit(f, out, j.dump(2) + "\n");
  return 0;
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("{}: cannot open report", path));
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchema, fmt::format("{}: SchemaError: {}", path, e.what()));
  }
}

std::string ReportTask(const json& report) {
  if (auto config = report.find("config"); config != report.end() && config->is_object()) {
    if (auto task = config->find("task"); task != config->end() && task->is_string()) {
      return task->get<std::string>();
    }
  }
  return "default";
}

std::optional<double> ReportTaskSuccess(const json& report) {
  auto ts = report.find("ts");
  if (ts == report.end() || !ts->is_object()) return std::nullopt;
  for (const char* key : {"acc", "mpr"}) {
    if (auto it = ts->find(key); it != ts->end() && it->is_number()) return it->get<double>();
  }
  return std::nullopt;
}

MetricReport ReportMetrics(const json& report, const std::string& path) {
  auto corpus = report.find("corpus");
  if (!report.is_object() || corpus == report.end()) {
    throw Error(ErrorCode::kSchema, fmt::format("{}: SchemaError: missing \"corpus\"", path));
  }
  try {
    return MetricReportFromJson(*corpus);
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}: {}", path, e.what()));
  }
}

int CmdTable(const Flags& f, RunConfig config, std::ostream& out) {
  if (f.positional.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "table needs at least one report file");
  }
  RequirePath(f.human, "--human");
  const json human = ReadJsonFile(f.human);
  const MetricReport anchor = ReportMetrics(human, f.human);
  const std::string task = ReportTask(human);

  std::vector<TableRow> rows;
  for (const auto& path : f.positional) {
    const json report = ReadJsonFile(path);
    const std::string row_task = ReportTask(report);
    if (row_task != task) {
      throw Error(ErrorCode::kSchema,
                  fmt::format("{}: SchemaError: task \"{}\" differs from the human anchor's "
                              "\"{}\"; human anchors must share a task tag",
                              path, row_task, task));
    }
    TableRow row;
    row.metrics = ReportMetrics(report, path);
    row.system = row.metrics.corpus_id.empty() ? fs::path(path).stem().string()
                                               : row.metrics.corpus_id;
    row.ld = LinguisticDivergence(row.metrics, anchor).ld;
    row.ts = ReportTaskSuccess(report);
    rows.push_back(std::move(row));
  }
  TableRow human_row;
  human_row.metrics = anchor;
  human_row.system = anchor.corpus_id.empty() ? "human" : anchor.corpus_id;
  human_row.ts = ReportTaskSuccess(human);
  rows.push_back(std::move(human_row));

  const std::string format = config.output_format.empty() ? "csv" : config.output_format;
  Emit(f, out, RenderTable(rows, format, task));
  return 0;
}

int CmdCurves(const Flags& f, RunConfig config, std::ostream& out) {
  RequirePath(f.manifest, "--manifest");
  std::ifstream in(f.manifest);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("{}: cannot open manifest", f.manifest));
  const auto manifest =
      ParseManifest(in, fs::path(f.manifest).parent_path(), f.manifest);

  std::optional<Corpus> human;
  if (!f.human.empty()) human = LoadCorpus(f.human, config.tokenizer, HumanStatusFilter(config));
  std::optional<Vocabulary> vocab;
  if (!f.train.empty()) {
    const Corpus train = LoadCorpus(f.train, config.tokenizer, HumanStatusFilter(config));
    vocab = BuildVocabulary(train, config.scope, f.min_count);
  }
  const StopwordSet stopwords = ResolveStopwords(config);
  TrackAnchors anchors{human ? &*human : nullptr, vocab ? &*vocab : nullptr, &stopwords};
  TrackOptions options;
  options.eval = {config.bleu, config.scope, 1};
  options.tokenizer = config.tokenizer;
  options.status = GeneratedStatusFilter(config);
  options.percentile_base = config.percentile_base;
  options.jobs = f.jobs;
  const std::string label = f.label.empty() ? fs::path(f.manifest).stem().string() : f.label;
  const MetricTrack track = BuildMetricTrack(label, manifest, anchors, options);

  const std::string format = config.output_format.empty() ? "csv" : config.output_format;
  if (format == "csv") {
    std::string text = "step,metric,raw,normalized\n";
    for (const auto& p : track.points) {
      text += fmt::format("{},{},{},{}\n", p.step, p.metric, FormatNumber(p.raw),
                          FormatNumber(p.normalized));
    }
    Emit(f, out, text);
    return 0;
  }
  config.output_format = format;
  json inputs = json::object();
  inputs["manifest"] = InputEntry(f.manifest);
  json j = ReportEnvelope("curves", config, std::move(inputs));
  j["label"] = track.label;
  json points = json::array();
  for (const auto& p : track.points) {
    points.push_back({{"step", p.step},
                      {"metric", p.metric},
                      {"raw", RoundSignificant(p.raw)},
                      {"normalized", RoundSignificant(p.normalized)}});
  }
  j["points"] = std::move(points);
  Emit(f, out, j.dump(2) + "\n");
  return 0;
}

std::vector<int> ParseEdges(const std::string& text) {
  if (text.empty()) return DefaultBucketEdges();
  std::vector<int> edges;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      size_t used = 0;
      edges.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("bad bucket edge \"{}\"", item));
    }
  }
  return edges;
}

int CmdRare(const Flags& f, RunConfig config, std::ostream& out) {
  RequirePath(f.train, "--train");
  RequirePath(f.human, "--human");
  json inputs = json::object();
  const Corpus train = LoadCorpus(f.train, config.tokenizer, HumanStatusFilter(config));
  inputs["train"] = InputEntry(f.train);
  const Corpus human = LoadCorpus(f.human, config.tokenizer, HumanStatusFilter(config));
  inputs["human"] = InputEntry(f.human);
  std::optional<Corpus> gen;
  if (!f.gen.empty()) {
    gen = LoadCorpus(f.gen, config.tokenizer, GeneratedStatusFilter(config));
    inputs["gen"] = InputEntry(f.gen);
  }
  OutcomeSet outcomes;
  if (!f.outcomes.empty()) {
    outcomes = LoadOutcomes(f.outcomes);
    inputs["outcomes"] = InputEntry(f.outcomes);
  }
  const Vocabulary vocab = BuildVocabulary(train, config.scope, f.min_count);
  const RareWords rare = RareWordSet(vocab, config.rare_threshold);
  const RareWordReport report =
      BuildRareWordReport(human, gen ? &*gen : nullptr, rare, outcomes.games);
  const auto edges = ParseEdges(f.edges);
  const auto buckets = DifficultyBuckets(human, rare, outcomes.games, edges);

  if (config.output_format.empty()) config.output_format = "json";
  if (config.output_format == "csv") {
    std::string text =
        "min_turns,max_turns,n_games,mean_distractors,mean_same_category_distractors,"
        "mean_rare_words,accuracy\n";
    for (const auto& b : buckets) {
      text += fmt::format("{},{},{},{},{},{},{}\n", b.min_turns,
                          b.max_turns ? std::to_string(*b.max_turns) : "-", b.n_games,
                          Cell(b.mean_distractors), Cell(b.mean_same_category_distractors),
                          Cell(b.mean_rare_words), Cell(b.accuracy));
    }
    Emit(f, out, text);
    return 0;
  }
  json j = ReportEnvelope("rare", config, std::move(inputs));
  j["rare"] = ToJson(report);
  json list = json::array();
  for (const auto& b : buckets) list.push_back(ToJson(b));
  j["buckets"] = std::move(list);
  Emit(f, out, j.dump(2) + "\n");
  return 0;
}

int CmdZipf(const Flags& f, RunConfig config, std::ostream& out) {
  RequirePath(f.gen, "--gen");
  const Corpus corpus = LoadCorpus(f.gen, config.tokenizer, GeneratedStatusFilter(config));
  const ZipfCurve curve = BuildZipfCurve(corpus, config.scope);
  const std::string format = config.output_format.empty() ? "csv" : config.output_format;
  if (format == "csv") {
    std::string text = "rank,frequency\n";
    for (const auto& p : curve.points) text += fmt::format("{},{}\n", p.rank, p.frequency);
    Emit(f, out, text);
    return 0;
  }
  config.output_format = format;
  json inputs = json::object();
  inputs["gen"] = InputEntry(f.gen);
  json j = ReportEnvelope("zipf", config, std::move(inputs));
  j["total_tokens"] = curve.total_tokens;
  json points = json::array();
  for (const auto& p : curve.points) points.push_back({p.rank, p.frequency});
  j["points"] = std::move(points);
  Emit(f, out, j.dump(2) + "\n");
  return 0;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    cells.push_back(first == std::string::npos ? "" : cell.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

int CmdCorrelate(const Flags& f, RunConfig config, std::ostream& out) {
  if (f.positional.size() != 1) {
    throw Error(ErrorCode::kInvalidArgument, "correlate takes exactly one CSV file");
  }
  const std::string& path = f.positional.front();
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("{}: cannot open", path));
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kSchema, fmt::format("{}: SchemaError: empty file", path));
  }
  const auto header = SplitCsvLine(line);
  auto column = [&header](std::string_view name) -> std::optional<size_t> {
    for (size_t i = 0; i < header.size(); ++i) {
      std::string lower = header[i];
      std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
      if (lower == name) return i;
    }
    return std::nullopt;
  };
  auto x_col = column("ld");
  auto y_col = column("ts");
  if (!x_col || !y_col) {
    if (header.size() != 2) {
      throw Error(ErrorCode::kSchema,
                  fmt::format("{}: SchemaError: need \"ld\" and \"ts\" columns", path));
    }
    x_col = 0;
    y_col = 1;
  }
  std::vector<double> xs, ys;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = SplitCsvLine(line);
    auto number = [&](size_t col) {
      if (col >= cells.size()) {
        throw Error(ErrorCode::kMalformedLine,
                    fmt::format("{}:{}: MalformedLine({}): missing column", path, line_no, line_no));
      }
      char* end = nullptr;
      const double v = std::strtod(cells[col].c_str(), &end);
      if (cells[col].empty() || *end != '\0') {
        throw Error(ErrorCode::kMalformedLine,
                    fmt::format("{}:{}: MalformedLine({}): \"{}\" is not a number", path, line_no,
                                line_no, cells[col]));
      }
      return v;
    };
    xs.push_back(number(*x_col));
    ys.push_back(number(*y_col));
  }
  const SpearmanResult result = Spearman(xs, ys);
  const std::string format = config.output_format.empty() ? "json" : config.output_format;
  if (format == "csv") {
    Emit(f, out,
         fmt::format("rho,p,n\n{},{},{}\n", FormatNumber(result.rho),
                     FormatNumber(result.p_value), xs.size()));
    return 0;
  }
  json j = json::object();
  j["schema_version"] = kSchemaVersion;
  j["command"] = "correlate";
  j["inputs"] = json{{"pairs", InputEntry(path)}};
  j["n"] = xs.size();
  j["rho"] = RoundSignificant(result.rho);
  j["p"] = RoundSignificant(result.p_value);
  Emit(f, out, j.dump(2) + "\n");
  return 0;
}

int CmdSubsample(const Flags& f, RunConfig config, std::ostream& out) {
  RequirePath(f.gen, "--gen");
  const Corpus corpus = LoadCorpus(f.gen, config.tokenizer, GeneratedStatusFilter(config));
  const Corpus sample = Subsample(corpus, f.fraction, config.seed);
  std::ostringstream text;
  WriteCorpus(text, sample);
  Emit(f, out, text.str());
  return 0;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dialogue quality and task-success evaluation", "dialometer"};
  app.require_subcommand(1);
  Flags f;

  std::vector<Command> commands;
  auto add = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    AddConfigFlags(sub, f);
    commands.push_back({name, sub, ""});
    return sub;
  };

  CLI::App* eval = add("eval", "Linguistic metrics, LD and task success of a generated corpus");
  eval->add_option("--gen", f.gen, "Generated corpus (JSON-Lines)");
  eval->add_option("--human", f.human, "Human corpus for the same games");
  eval->add_option("--train", f.train, "Training corpus for the vocabulary");
  eval->add_option("--outcomes", f.outcomes, "Guesser outcomes (JSON-Lines)");
  eval->add_option("--min-count", f.min_count, "Vocabulary minimum count")
      ->check(CLI::PositiveNumber);

  CLI::App* table = add("table", "Comparison table of eval reports against a human report");
  table->add_option("reports", f.positional, "Eval report files");
  table->add_option("--human", f.human, "Human eval report");

  CLI::App* curves = add("curves", "Metric tracks over epochs or training-set fractions");
  curves->add_option("--manifest", f.manifest, "TSV: step, corpus path, outcomes path");
  curves->add_option("--human", f.human, "Human corpus");
  curves->add_option("--train", f.train, "Training corpus");
  curves->add_option("--label", f.label, "Track label");
  curves->add_option("--min-count", f.min_count, "Vocabulary minimum count")
      ->check(CLI::PositiveNumber);

  CLI::App* rare = add("rare", "Rare-word report and difficulty buckets");
  rare->add_option("--train", f.train, "Training corpus");
  rare->add_option("--human", f.human, "Human test corpus");
  rare->add_option("--gen", f.gen, "Generated corpus");
  rare->add_option("--outcomes", f.outcomes, "Guesser outcomes on the human games");
  rare->add_option("--edges", f.edges, "Bucket edges, e.g. 1,2,3,4,5,6,7,8,9,10");
  rare->add_option("--min-count", f.min_count, "Vocabulary minimum count")
      ->check(CLI::PositiveNumber);

  CLI::App* zipf = add("zipf", "Rank/frequency curve of a corpus");
  zipf->add_option("--gen", f.gen, "Corpus");

  CLI::App* correlate = add("correlate", "Spearman correlation of paired LD/TS values");
  correlate->add_option("pairs", f.positional, "CSV with ld and ts columns");

  CLI::App* subsample = add("subsample", "Deterministic random subset of a corpus");
  subsample->add_option("--gen", f.gen, "Corpus");
  subsample->add_option("--fraction", f.fraction, "Fraction in (0, 1]");

  const std::map<std::string, std::function<int(const Flags&, RunConfig, std::ostream&)>>
      handlers = {{"eval", CmdEval},   {"table", CmdTable},         {"curves", CmdCurves},
                  {"rare", CmdRare},   {"zipf", CmdZipf},           {"correlate", CmdCorrelate},
                  {"subsample", CmdSubsample}};

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    for (const auto& command : commands) {
      if (command.app->parsed()) {
        const RunConfig config = ResolveConfig(f);
        return handlers.at(command.name)(f, config, out);
      }
    }
    err << "no command given\n";
    return 2;
  } catch (const Error& e) {
    err << "dialometer: " << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "dialometer: internal error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace dialometer
