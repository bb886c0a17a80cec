// Copyright 2026 The normchain Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "normchain/corpus.h"
#include "normchain/error.h"
#include "normchain/lemmatizer.h"
#include "normchain/metrics.h"
#include "normchain/mock_providers.h"
#include "normchain/splitting.h"
#include "normchain/synthetic.h"
#include "normchain/tasks.h"
#include "normchain/text.h"

namespace normchain::cli {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

// --- helpers ---------------------------------------------------------------

std::string Dashless(std::string s) {
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

struct MockSpec {
  std::string name;
  std::map<std::string, std::string> params;
};

std::optional<MockSpec> ParseMockUrl(std::string_view url) {
  constexpr std::string_view kScheme = "mock://";
  if (url.substr(0, kScheme.size()) != kScheme) return std::nullopt;
  url.remove_prefix(kScheme.size());
  MockSpec spec;
  const size_t q = url.find('?');
  spec.name = std::string(url.substr(0, q));
  if (q != std::string_view::npos) {
    std::string_view query = url.substr(q + 1);
    while (!query.empty()) {
      const size_t amp = query.find('&');
      const std::string_view kv = query.substr(0, amp);
      const size_t eq = kv.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError("bad mock parameter '" + std::string(kv) + "'");
      }
      spec.params[std::string(kv.substr(0, eq))] =
          std::string(kv.substr(eq + 1));
      if (amp == std::string_view::npos) break;
      query.remove_prefix(amp + 1);
    }
  }
  return spec;
}

double ParamDouble(const MockSpec& spec, const std::string& key,
                   double fallback) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) return fallback;
  try {
    size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("mock parameter '" + key + "' is not a number");
  }
}

uint64_t ParamUint(const MockSpec& spec, const std::string& key,
                   uint64_t fallback) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) return fallback;
  try {
    size_t used = 0;
    const uint64_t v = std::stoull(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("mock parameter '" + key + "' is not an integer");
  }
}

std::vector<std::string> ReadLines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  // A trailing newline does not start another record.
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

void WriteText(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failure on " + path.string());
}

void EnsureDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

void WriteRunConfig(const fs::path& dir, const ordered_json& config) {
  WriteText(dir / "run_config.json", config.dump(2) + "\n");
}

std::map<std::string, EmbeddingVector> LoadVectorTable(const fs::path& path) {
  std::map<std::string, EmbeddingVector> table;
  size_t line_number = 0;
  for (const std::string& line : ReadLines(path)) {
    ++line_number;
    if (text::Trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      table[j.at("text").get<std::string>()] =
          j.at("vector").get<EmbeddingVector>();
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.string() + " line " + std::to_string(line_number) +
                      ": " + e.what());
    }
  }
  return table;
}

// --- subcommands -----------------------------------------------------------

int CmdValidate(const std::string& path, std::ostream& out) {
  // Reports every problem instead of stopping at the first one.
  const std::vector<std::string> lines = ReadLines(path);
  std::map<std::string, size_t> first_seen;
  size_t problems = 0;
  for (size_t i = 0; i < lines.size(); ++i) {
    const size_t line_number = i + 1;
    if (text::Trim(lines[i]).empty()) continue;
    Story story;
    try {
      story = StoryFromJsonLine(lines[i], line_number);
    } catch (const DataError& e) {
      out << e.what() << "\n";
      ++problems;
      continue;
    }
    std::vector<std::string> issues;
    for (const Violation& v : ValidateStory(story)) {
      issues.push_back(v.field + " " + v.rule);
    }
    auto [it, inserted] = first_seen.emplace(story.id, line_number);
    if (!inserted) {
      issues.push_back("duplicate id (first on line " +
                       std::to_string(it->second) + ")");
    }
    if (!issues.empty()) {
      out << "line " << line_number << " (" << story.id
          << "): " << text::Join(issues, "; ") << "\n";
      ++problems;
    }
  }
  return problems == 0 ? kOk : kValidationFailure;
}

int CmdReport(const std::string& path, std::ostream& out) {
  const std::vector<Story> stories = LoadCorpus(path);
  const CorpusReport report = MakeCorpusReport(stories);
  ordered_json j;
  j["story_count"] = report.story_count;
  ordered_json means;
  for (const auto& [c, v] : report.mean_tokens) {
    means[std::string(CategoryName(c))] = v;
  }
  j["mean_tokens"] = means;
  out << j.dump(2) << "\n";
  return kOk;
}

struct SplitOptions {
  std::string corpus;
  std::string strategy;
  std::string target = "actions";
  std::string ratios = "10:1:1";
  std::optional<size_t> k;
  std::optional<uint64_t> seed;
  std::string embedder = "mock";
  std::string lemmas;
  std::string out;
  bool strict = false;
  size_t workers = 1;
};

int CmdSplit(const SplitOptions& o, std::ostream& out, std::ostream& err) {
  const auto strategy = ParseStrategyCode(o.strategy);
  if (!strategy) throw ConfigError("unknown split strategy '" + o.strategy + "'");
  const auto target = ParseTargetField(o.target);
  if (!target) throw ConfigError("unknown target '" + o.target + "'");
  const SplitRatios ratios = SplitRatios::Parse(o.ratios);
  const std::vector<Story> stories = LoadCorpus(o.corpus);

  ordered_json config;
  config["command"] = "split";
  config["corpus"] = o.corpus;
  config["strategy"] = o.strategy;
  config["ratios"] = ratios.ToString();
  config["workers"] = o.workers;

  SplitOutcome outcome;
  ordered_json extra;
  switch (*strategy) {
    case SplitStrategy::kNormDistance: {
      const size_t k = o.k.value_or(1000);
      std::unique_ptr<Embedder> embedder;
      if (o.embedder == "mock") {
        if (!o.seed) {
          throw ConfigError("--seed is required with the mock embedder");
        }
        embedder = std::make_unique<mock::HashedNgramEmbedder>(256, 3, *o.seed);
      } else if (o.embedder.rfind("table:", 0) == 0) {
        embedder = std::make_unique<mock::TableEmbedder>(
            LoadVectorTable(o.embedder.substr(6)));
      } else {
        HttpEndpoint ep;
        ep.url = o.embedder;
        embedder = std::make_unique<HttpEmbedder>(ep);
      }
      outcome = SplitByNormDistance(stories, *embedder, k, ratios, o.workers);
      config["k"] = k;
      config["embedder"] = o.embedder;
      if (o.seed) config["seed"] = *o.seed;
      break;
    }
    case SplitStrategy::kLexicalBias: {
      const size_t k = o.k.value_or(100);
      std::unique_ptr<Lemmatizer> lemmatizer;
      if (o.lemmas.empty()) {
        lemmatizer = std::make_unique<RuleLemmatizer>();
      } else {
        lemmatizer =
            std::make_unique<TableLemmatizer>(TableLemmatizer::FromTsv(o.lemmas));
      }
      outcome = SplitByLexicalBias(stories, *lemmatizer, *target, k, ratios,
                                   o.workers);
      const LemmaBiasTable table =
          BuildLemmaBiasTable(stories, *lemmatizer, *target, k);
      ordered_json lemmas = ordered_json::array();
      for (const LemmaBias& e : table.entries) {
        lemmas.push_back({{"lemma", e.lemma},
                          {"moral_count", e.moral_count},
                          {"immoral_count", e.immoral_count},
                          {"skew", e.skew}});
      }
      extra["biased_lemmas"] = lemmas;
      config["target"] = o.target;
      config["k"] = k;
      config["lemmatizer"] = o.lemmas.empty() ? "rules" : o.lemmas;
      break;
    }
    case SplitStrategy::kMinimalPairs:
      outcome = SplitByMinimalPairs(stories, *target, ratios, o.workers);
      config["target"] = o.target;
      break;
  }

  const fs::path dir(o.out);
  EnsureDir(dir);
  for (Partition p : kAllPartitions) {
    std::vector<Story> part;
    for (const Story& s : stories) {
      if (outcome.assignment.partition.at(s.id) == p) part.push_back(s);
    }
    SaveCorpus(dir / (std::string(PartitionName(p)) + ".jsonl"), part);
  }

  ordered_json report;
  report["strategy"] = o.strategy;
  report["parameters"] = config;
  ordered_json counts;
  for (Partition p : kAllPartitions) {
    counts[std::string(PartitionName(p))] = outcome.assignment.Count(p);
  }
  report["counts"] = counts;
  bool monotone = false;
  try {
    const SplitReport r = MakeSplitReport(outcome.assignment, outcome.metrics);
    ordered_json means;
    for (Partition p : kAllPartitions) {
      means[std::string(PartitionName(p))] = r.mean.at(p);
    }
    report["mean"] = means;
    monotone = r.IsMonotone();
    report["monotone"] = monotone;
  } catch (const DataError& e) {
    err << "warning: " << e.what() << "\n";
    report["mean"] = nullptr;
    report["monotone"] = nullptr;
  }
  for (auto& [key, value] : extra.items()) report[key] = value;
  WriteText(dir / "split_report.json", report.dump(2) + "\n");
  WriteRunConfig(dir, config);
  out << report["counts"].dump() << "\n";
  if (o.strict && !monotone) {
    err << "split report is not monotone\n";
    return kValidationFailure;
  }
  return kOk;
}

struct TasksOptions {
  std::string input;
  std::string task;
  std::string setting;
  std::string out;
};

int CmdTasks(const TasksOptions& o, std::ostream& out) {
  const auto task = ParseTask(Dashless(o.task));
  if (!task) throw ConfigError("unknown task '" + o.task + "'");
  if (!IsKnownSetting(*task, o.setting)) {
    throw ConfigError("unknown setting '" + o.setting + "' for task " +
                      std::string(TaskName(*task)));
  }
  std::vector<fs::path> inputs;
  const fs::path in(o.input);
  if (fs::is_directory(in)) {
    for (Partition p : kAllPartitions) {
      const fs::path f = in / (std::string(PartitionName(p)) + ".jsonl");
      if (fs::exists(f)) inputs.push_back(f);
    }
    if (inputs.empty()) {
      throw IoError("no train/dev/test .jsonl files in " + in.string());
    }
  } else {
    inputs.push_back(in);
  }
  const fs::path dir(o.out);
  EnsureDir(dir);
  ordered_json counts;
  for (const fs::path& f : inputs) {
    const std::vector<Story> stories = LoadCorpus(f);
    const std::vector<TaskSample> samples =
        BuildSamples(stories, *task, o.setting);
    SaveTaskSamples(dir / (f.stem().string() + ".jsonl"), samples);
    counts[f.stem().string()] = samples.size();
  }
  ordered_json config;
  config["command"] = "tasks";
  config["input"] = o.input;
  config["task"] = TaskName(*task);
  config["setting"] = o.setting;
  WriteRunConfig(dir, config);
  out << counts.dump() << "\n";
  return kOk;
}

struct CoeOptions {
  std::string config;
  std::string samples;
  std::string out;
  std::string strategy;
  size_t workers = 1;
};

int CmdCoe(const CoeOptions& o, std::ostream& out, std::ostream& err) {
  ChainFile file = LoadChainFile(o.config);
  if (!o.strategy.empty()) {
    const auto s = coe::ParseStrategy(o.strategy);
    if (!s) throw ConfigError("unknown strategy '" + o.strategy + "'");
    file.config.strategy = *s;
  }
  coe::Experts experts;
  std::shared_ptr<Classifier> judge;
  for (const auto& [role, ep] : file.endpoints) {
    switch (KindOf(role)) {
      case RoleKind::kGenerator:
        experts.generators[role] = MakeGenerator(ep);
        break;
      case RoleKind::kClassifier:
        if (role == Role::kJudge) {
          judge = MakeClassifier(ep);
        } else {
          experts.classifiers[role] = MakeClassifier(ep);
        }
        break;
      case RoleKind::kEmbedder:
        break;
    }
  }
  experts.CheckCovers(file.config.strategy);

  std::vector<coe::ChainInput> inputs;
  for (const TaskSample& s : LoadTaskSamples(o.samples)) {
    inputs.push_back(coe::ChainInputFromSample(s, file.config.strategy));
  }
  const std::vector<coe::PipelineTrace> traces =
      coe::RunBatch(inputs, file.config, experts, o.workers);
  const coe::BatchSummary summary =
      coe::Summarize(inputs, traces, file.config, judge.get(), o.workers);

  const fs::path dir(o.out);
  EnsureDir(dir);
  std::ostringstream trace_lines;
  for (const coe::PipelineTrace& t : traces) {
    trace_lines << coe::TraceToJsonLine(t) << "\n";
  }
  WriteText(dir / "traces.jsonl", trace_lines.str());
  WriteText(dir / "summary.json", coe::SummaryToJson(summary) + "\n");

  ordered_json config;
  config["command"] = "coe run";
  config["samples"] = o.samples;
  config["strategy"] = coe::StrategyName(file.config.strategy);
  config["decode"] = {{"n", file.config.decode.n},
                      {"top_p", file.config.decode.top_p},
                      {"max_new_tokens", file.config.decode.max_new_tokens},
                      {"seed", file.config.decode.seed}};
  config["target_orientation"] =
      file.config.target_orientation
          ? std::string(OrientationName(*file.config.target_orientation))
          : std::string("n/a");
  config["plausible_threshold"] = file.config.plausible_threshold;
  ordered_json endpoints;
  for (const auto& [role, ep] : file.endpoints) {
    endpoints[std::string(RoleName(role))] = {
        {"url", ep.url},
        {"timeout_ms", ep.timeout_ms},
        {"max_concurrency", ep.max_concurrency},
        {"retries", ep.retries}};
  }
  config["endpoints"] = endpoints;
  config["workers"] = o.workers;
  WriteRunConfig(dir, config);

  out << coe::SummaryToJson(summary) << "\n";
  if (summary.failed > 0) {
    err << summary.failed << " sample(s) failed; see traces.jsonl\n";
    return kProviderFailure;
  }
  return kOk;
}

struct EvalGenOptions {
  std::string hyp;
  std::vector<std::string> refs;
  std::string metrics = "bleu,rouge,diversity";
};

int CmdEvalGen(const EvalGenOptions& o, std::ostream& out) {
  std::vector<std::string> wanted;
  std::stringstream ss(o.metrics);
  for (std::string m; std::getline(ss, m, ',');) {
    m = std::string(text::Trim(m));
    if (m != "bleu" && m != "rouge" && m != "diversity") {
      throw ConfigError("unknown metric '" + m +
                        "' (expected bleu, rouge, diversity)");
    }
    wanted.push_back(m);
  }
  const std::vector<std::string> hyps = ReadLines(o.hyp);
  std::vector<metrics::EvalPair> pairs(hyps.size());
  for (size_t i = 0; i < hyps.size(); ++i) pairs[i].hypothesis = hyps[i];
  for (const std::string& ref_path : o.refs) {
    const std::vector<std::string> refs = ReadLines(ref_path);
    if (refs.size() != hyps.size()) {
      throw ConfigError(ref_path + " has " + std::to_string(refs.size()) +
                        " lines, hypotheses have " +
                        std::to_string(hyps.size()));
    }
    for (size_t i = 0; i < refs.size(); ++i) {
      pairs[i].references.push_back(refs[i]);
    }
  }
  ordered_json j;
  j["pairs"] = pairs.size();
  for (const std::string& m : wanted) {
    if (m == "bleu") {
      if (o.refs.empty()) throw ConfigError("bleu needs --ref");
      j["bleu"] = metrics::CorpusBleu(pairs);
    } else if (m == "rouge") {
      if (o.refs.empty()) throw ConfigError("rouge needs --ref");
      j["rouge_l"] = metrics::MeanRougeL(pairs);
    } else {
      j["diversity"] = metrics::JointNgramDiversity(hyps);
    }
  }
  out << j.dump() << "\n";
  return kOk;
}

int CmdEvalCls(const std::string& pred, const std::string& gold,
               const std::string& positive, std::ostream& out) {
  const std::vector<std::string> p = ReadLines(pred);
  const std::vector<std::string> g = ReadLines(gold);
  const metrics::ClassificationScores s =
      metrics::EvaluateClassification(p, g, positive);
  ordered_json j;
  j["n"] = g.size();
  j["accuracy"] = s.accuracy;
  j["f1"] = s.f1;
  out << j.dump() << "\n";
  return kOk;
}

int CmdEvalRatings(const std::string& csv, bool header, std::ostream& out) {
  std::vector<std::string> lines = ReadLines(csv);
  if (header && !lines.empty()) lines.erase(lines.begin());
  metrics::RatingMatrix matrix;
  size_t raters = 0;
  for (const std::string& line : lines) {
    if (text::Trim(line).empty()) continue;
    std::vector<std::optional<std::string>> row;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
      const std::string v(text::Trim(cell));
      row.push_back(v.empty() ? std::nullopt : std::optional(v));
    }
    if (!line.empty() && line.back() == ',') row.push_back(std::nullopt);
    raters = std::max(raters, row.size());
    matrix.push_back(std::move(row));
  }
  ordered_json j;
  j["items"] = matrix.size();
  j["raters"] = raters;
  j["alpha"] = metrics::KrippendorffAlpha(matrix);
  out << j.dump() << "\n";
  return kOk;
}

int CmdSynth(const std::string& kind, size_t n, std::optional<uint64_t> seed,
             const std::string& out_path, const std::string& vectors_path,
             std::ostream& out) {
  if (!seed) throw ConfigError("--seed is required");
  if (kind == "audit") {
    const synthetic::AuditCorpus corpus = synthetic::MakeAuditCorpus(n, *seed);
    SaveCorpus(out_path, corpus.stories);
    if (!vectors_path.empty()) {
      std::ostringstream lines;
      for (const auto& [norm, v] : corpus.norm_vectors) {
        lines << nlohmann::json{{"text", norm}, {"vector", v}}.dump() << "\n";
      }
      WriteText(vectors_path, lines.str());
    }
  } else if (kind == "oracle") {
    SaveCorpus(out_path, synthetic::MakeOracleWorldStories(n, *seed));
  } else {
    throw ConfigError("unknown synthetic corpus kind '" + kind + "'");
  }
  out << "wrote " << n << " stories to " << out_path << "\n";
  return kOk;
}

int CmdServeMock(const std::string& host, int port, const std::string& gen,
                 const std::string& cls, const std::string& emb,
                 std::ostream& out) {
  auto endpoint = [](const std::string& url) {
    HttpEndpoint ep;
    ep.url = url;
    return ep;
  };
  ProviderServer server(gen.empty() ? nullptr : MakeGenerator(endpoint(gen)),
                        cls.empty() ? nullptr : MakeClassifier(endpoint(cls)),
                        emb.empty() ? nullptr : MakeEmbedder(endpoint(emb)));
  int bound = port;
  if (port == 0) {
    bound = server.BindToAnyPort(host);
    if (bound < 0) throw IoError("cannot bind " + host);
  } else if (!server.Bind(host, port)) {
    throw IoError("cannot bind " + host + ":" + std::to_string(port));
  }
  out << "listening on http://" << host << ":" << bound << std::endl;
  server.Listen();
  return kOk;
}

}  // namespace

std::shared_ptr<Generator> MakeGenerator(const HttpEndpoint& endpoint) {
  if (auto spec = ParseMockUrl(endpoint.url)) {
    if (spec->name == "echo") return std::make_shared<mock::EchoGenerator>();
    if (spec->name == "oracle") {
      return std::make_shared<mock::OracleGenerator>(
          ParamDouble(*spec, "success", 1.0));
    }
    throw ConfigError("unknown mock generator '" + spec->name + "'");
  }
  return std::make_shared<HttpGenerator>(endpoint);
}

std::shared_ptr<Classifier> MakeClassifier(const HttpEndpoint& endpoint) {
  if (auto spec = ParseMockUrl(endpoint.url)) {
    if (spec->name == "oracle") {
      return std::make_shared<mock::OracleClassifier>(
          ParamDouble(*spec, "accuracy", 1.0), ParamUint(*spec, "seed", 0));
    }
    throw ConfigError("unknown mock classifier '" + spec->name + "'");
  }
  return std::make_shared<HttpClassifier>(endpoint);
}

std::shared_ptr<Embedder> MakeEmbedder(const HttpEndpoint& endpoint) {
  if (auto spec = ParseMockUrl(endpoint.url)) {
    if (spec->name == "hashed") {
      return std::make_shared<mock::HashedNgramEmbedder>(
          ParamUint(*spec, "dim", 256), ParamUint(*spec, "n", 3),
          ParamUint(*spec, "seed", 0));
    }
    throw ConfigError("unknown mock embedder '" + spec->name + "'");
  }
  return std::make_shared<HttpEmbedder>(endpoint);
}

ChainFile LoadChainFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  ChainFile file;
  try {
    const auto strategy = coe::ParseStrategy(j.at("strategy").get<std::string>());
    if (!strategy) throw ConfigError(path + ": unknown strategy");
    file.config.strategy = *strategy;

    const auto& decode = j.at("decode");
    if (!decode.contains("seed")) {
      throw ConfigError(path + ": decode.seed is required");
    }
    file.config.decode.seed = decode.at("seed").get<uint64_t>();
    file.config.decode.n = decode.value("n", 10);
    file.config.decode.top_p = decode.value("top_p", 0.9);
    file.config.decode.max_new_tokens = decode.value("max_new_tokens", 64);
    file.config.decode.Validate();

    const std::string orientation = j.value("target_orientation", "n/a");
    if (orientation == "moral") {
      file.config.target_orientation = Orientation::kMoral;
    } else if (orientation == "immoral") {
      file.config.target_orientation = Orientation::kImmoral;
    } else if (orientation != "n/a") {
      throw ConfigError(path + ": bad target_orientation '" + orientation + "'");
    }
    file.config.plausible_threshold = j.value("plausible_threshold", 0.5);

    for (const auto& [name, spec] : j.at("endpoints").items()) {
      const auto role = ParseRole(name);
      if (!role) throw ConfigError(path + ": unknown role '" + name + "'");
      HttpEndpoint ep;
      if (spec.is_string()) {
        ep.url = spec.get<std::string>();
      } else {
        ep.url = spec.at("url").get<std::string>();
        ep.timeout_ms = spec.value("timeout_ms", ep.timeout_ms);
        ep.max_concurrency = spec.value("max_concurrency", ep.max_concurrency);
        ep.retries = spec.value("retries", ep.retries);
      }
      file.endpoints[*role] = ep;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return file;
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"normchain: adversarial splits, task samples and "
               "chain-of-experts decoding for moral-reasoning narratives"};
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a story corpus");
  validate->add_option("corpus", validate_path, "Line-delimited story file")
      ->required();

  std::string report_path;
  auto* report = app.add_subcommand("report", "Mean token length per category");
  report->add_option("corpus", report_path)->required();

  SplitOptions split_opts;
  auto* split = app.add_subcommand("split", "Build an adversarial split");
  split->add_option("--corpus", split_opts.corpus)->required();
  split->add_option("--strategy", split_opts.strategy, "nd | lb | mp")
      ->required();
  split->add_option("--target", split_opts.target, "actions | consequences");
  split->add_option("--ratios", split_opts.ratios, "train:dev:test");
  split->add_option("--k", split_opts.k,
                    "clusters (nd, default 1000) or lemmas (lb, default 100)");
  split->add_option("--seed", split_opts.seed, "Seed for the mock embedder");
  split->add_option("--embedder", split_opts.embedder,
                    "mock | table:<vectors.jsonl> | http://host:port");
  split->add_option("--lemmas", split_opts.lemmas, "word<TAB>lemma table");
  split->add_option("--out", split_opts.out)->required();
  split->add_flag("--strict", split_opts.strict,
                  "Exit 1 if the report is not monotone");
  split->add_option("--workers", split_opts.workers);

  TasksOptions tasks_opts;
  auto* tasks = app.add_subcommand("tasks", "Build task samples");
  tasks->add_option("--input", tasks_opts.input, "Corpus file or split dir")
      ->required();
  tasks->add_option("--task", tasks_opts.task)->required();
  tasks->add_option("--setting", tasks_opts.setting)->required();
  tasks->add_option("--out", tasks_opts.out)->required();

  CoeOptions coe_opts;
  auto* coe_cmd = app.add_subcommand("coe", "Chain-of-experts decoding");
  coe_cmd->require_subcommand(1);
  auto* coe_run = coe_cmd->add_subcommand("run", "Run a chain over samples");
  coe_run->add_option("--config", coe_opts.config)->required();
  coe_run->add_option("--samples", coe_opts.samples)->required();
  coe_run->add_option("--out", coe_opts.out)->required();
  coe_run->add_option("--strategy", coe_opts.strategy,
                      "Overrides the config's strategy");
  coe_run->add_option("--workers", coe_opts.workers);

  auto* eval = app.add_subcommand("eval", "Evaluation metrics");
  eval->require_subcommand(1);
  EvalGenOptions gen_opts;
  auto* eval_gen = eval->add_subcommand("gen", "BLEU / ROUGE-L / diversity");
  eval_gen->add_option("--hyp", gen_opts.hyp)->required();
  eval_gen->add_option("--ref", gen_opts.refs, "Reference file (repeatable)");
  eval_gen->add_option("--metrics", gen_opts.metrics);
  std::string pred_path, gold_path, positive = "positive";
  auto* eval_cls = eval->add_subcommand("cls", "Accuracy and F1");
  eval_cls->add_option("--pred", pred_path)->required();
  eval_cls->add_option("--gold", gold_path)->required();
  eval_cls->add_option("--positive", positive, "Positive label");
  std::string ratings_path;
  bool ratings_header = false;
  auto* eval_ratings = eval->add_subcommand("ratings", "Krippendorff's alpha");
  eval_ratings->add_option("--csv", ratings_path)->required();
  eval_ratings->add_flag("--header", ratings_header, "Skip the first row");

  std::string synth_kind = "audit", synth_out, synth_vectors;
  size_t synth_n = 1200;
  std::optional<uint64_t> synth_seed;
  auto* synth = app.add_subcommand("synth", "Write a synthetic corpus");
  synth->add_option("--kind", synth_kind, "audit | oracle");
  synth->add_option("--n", synth_n);
  synth->add_option("--seed", synth_seed)->required();
  synth->add_option("--out", synth_out)->required();
  synth->add_option("--vectors", synth_vectors,
                    "Also write planted norm vectors (audit)");

  std::string serve_host = "127.0.0.1", serve_gen, serve_cls, serve_emb;
  int serve_port = 0;
  auto* serve = app.add_subcommand("serve-mock",
                                   "Serve mock experts over the wire protocol");
  serve->add_option("--host", serve_host);
  serve->add_option("--port", serve_port, "0 picks a free port");
  serve->add_option("--generator", serve_gen, "mock://echo | mock://oracle?...");
  serve->add_option("--classifier", serve_cls, "mock://oracle?...");
  serve->add_option("--embedder", serve_emb, "mock://hashed?...");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kIoOrConfigError;
  }

  try {
    if (validate->parsed()) return CmdValidate(validate_path, out);
    if (report->parsed()) return CmdReport(report_path, out);
    if (split->parsed()) return CmdSplit(split_opts, out, err);
    if (tasks->parsed()) return CmdTasks(tasks_opts, out);
    if (coe_run->parsed()) return CmdCoe(coe_opts, out, err);
    if (eval_gen->parsed()) return CmdEvalGen(gen_opts, out);
    if (eval_cls->parsed()) {
      return CmdEvalCls(pred_path, gold_path, positive, out);
    }
    if (eval_ratings->parsed()) {
      return CmdEvalRatings(ratings_path, ratings_header, out);
    }
    if (synth->parsed()) {
      return CmdSynth(synth_kind, synth_n, synth_seed, synth_out,
                      synth_vectors, out);
    }
    if (serve->parsed()) {
      return CmdServeMock(serve_host, serve_port, serve_gen, serve_cls,
                          serve_emb, out);
    }
  } catch (const ProviderError& e) {
    err << "provider error: " << e.what() << "\n";
    return kProviderFailure;
  } catch (const DataError& e) {
    err << "invalid data: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIoOrConfigError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kIoOrConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoOrConfigError;
  }
  return kIoOrConfigError;
}

}  // namespace normchain::cli
