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

#include "normchain/coe.h"

#include <algorithm>
#include <array>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "normchain/error.h"
#include "normchain/parallel.h"
#include "normchain/rng.h"

namespace normchain::coe {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::array<std::string_view, 5> kStrategyNames = {
    "action_ranking", "abductive_refinement", "conseq_ranking",
    "iterative_refinement", "norm_synthetic"};

std::string_view TargetActionLabel(Orientation o) {
  return o == Orientation::kMoral ? kMoralLabel : kImmoralLabel;
}

Orientation EffectiveOrientation(const ChainInput& in, const ChainConfig& cfg) {
  return cfg.target_orientation.value_or(in.orientation);
}

// Per-stage decode parameters. The seed depends only on the base seed, the
// sample id and the stage tag, so strategies sharing a stage (ranking and
// the first abductive stage) see identical draws.
DecodeParams StageParams(const ChainConfig& cfg, const ChainInput& in,
                         std::string_view stage, int n) {
  DecodeParams p = cfg.decode;
  p.n = n;
  p.seed = DeriveSeed(cfg.decode.seed, in.sample_id + "#" + std::string(stage));
  return p;
}

// Records progress so that a failure leaves a partial trace behind.
class TraceBuilder {
 public:
  TraceBuilder(const ChainInput& in, Strategy s) {
    trace_.sample_id = in.sample_id;
    trace_.strategy = s;
  }

  std::vector<Candidate> Generate(Generator& gen, std::string_view prompt,
                                  const DecodeParams& params) {
    std::vector<Candidate> cands =
        CheckCandidates(gen.Generate(prompt, params), params.n);
    trace_.used.generated += cands.size();
    return cands;
  }

  // Generates and ranks; returns the winning text.
  const std::string& GenerateAndRank(const Experts& experts, Role gen_role,
                                     Role cls_role, std::string_view prompt,
                                     const DecodeParams& params,
                                     std::string_view grounding,
                                     std::string_view target_label) {
    TraceStep step;
    step.role = gen_role;
    step.ranker = cls_role;
    step.target_label = std::string(target_label);
    step.input_text = std::string(prompt);
    step.candidates =
        Generate(experts.generator(gen_role), prompt, params);
    step.chosen_index = RankCounted(step.candidates,
                                    experts.classifier(cls_role),
                                    LabelsFor(cls_role), grounding,
                                    target_label);
    trace_.steps.push_back(std::move(step));
    return trace_.steps.back().chosen().text;
  }

  int RankCounted(std::vector<Candidate>& cands, Classifier& cls,
                  std::span<const std::string> labels,
                  std::string_view grounding, std::string_view target_label) {
    // Count each classifier call even if a later one fails.
    struct Counter : Classifier {
      Classifier& inner;
      size_t& count;
      Counter(Classifier& c, size_t& n) : inner(c), count(n) {}
      ClassDistribution Classify(std::string_view t,
                                 std::span<const std::string> l) override {
        ++count;
        return inner.Classify(t, l);
      }
    } counter(cls, trace_.used.classified);
    return RankCandidates(cands, counter, labels, grounding, target_label);
  }

  void AddStep(TraceStep step) { trace_.steps.push_back(std::move(step)); }
  PipelineTrace& trace() { return trace_; }

  PipelineTrace Finish() {
    trace_.final_text =
        trace_.steps.empty() ? std::string() : trace_.steps.back().chosen().text;
    return std::move(trace_);
  }

  PipelineTrace Fail(const std::string& message) {
    trace_.ok = false;
    trace_.error = message;
    trace_.final_text.clear();
    return std::move(trace_);
  }

 private:
  PipelineTrace trace_;
};

template <typename Body>
PipelineTrace Guard(const ChainInput& in, Strategy s, Body&& body) {
  TraceBuilder builder(in, s);
  try {
    body(builder);
  } catch (const ProviderError& e) {
    return builder.Fail(e.what());
  }
  return builder.Finish();
}

std::string ContextOf(const ChainInput& in) {
  return ContextGrounding(in.norm, in.situation, in.intention);
}

std::string ContextActionGrounding(std::string_view norm,
                                   std::string_view situation,
                                   std::string_view intention,
                                   std::string_view action) {
  std::string out;
  for (std::string_view part : {norm, situation, intention, action}) {
    if (part.empty()) continue;
    if (!out.empty()) out.push_back(' ');
    out.append(part);
  }
  return out;
}

}  // namespace

std::string_view StrategyName(Strategy s) {
  return kStrategyNames[static_cast<size_t>(s)];
}

std::optional<Strategy> ParseStrategy(std::string_view name) {
  for (size_t i = 0; i < kStrategyNames.size(); ++i) {
    if (kStrategyNames[i] == name) return static_cast<Strategy>(i);
  }
  // Accept dashed spellings on the command line.
  std::string underscored(name);
  std::replace(underscored.begin(), underscored.end(), '-', '_');
  if (underscored != name) return ParseStrategy(underscored);
  return std::nullopt;
}

const std::set<Role>& RequiredRoles(Strategy s) {
  static const std::map<Strategy, std::set<Role>> kRoles = {
      {Strategy::kActionRanking,
       {Role::kActionGenContext, Role::kActionClsContext}},
      {Strategy::kAbductiveRefinement,
       {Role::kActionGenContext, Role::kActionClsContext,
        Role::kConseqGenContextAction, Role::kConseqClsContextAction,
        Role::kActionGenContextConseq, Role::kActionClsContextConseq}},
      {Strategy::kConseqRanking,
       {Role::kConseqGenContextAction, Role::kConseqClsContextAction}},
      {Strategy::kIterativeRefinement,
       {Role::kConseqGenContextAction, Role::kConseqClsContextAction,
        Role::kConseqRefiner}},
      {Strategy::kNormSynthetic,
       {Role::kConseqGenContextAction, Role::kConseqClsContextAction,
        Role::kNormGenFull}},
  };
  return kRoles.at(s);
}

Budget ExpectedBudget(Strategy s, int n) {
  const auto un = static_cast<size_t>(n);
  switch (s) {
    case Strategy::kActionRanking: return {un, un};
    case Strategy::kAbductiveRefinement: return {3 * un, 3 * un};
    case Strategy::kConseqRanking: return {un, un};
    case Strategy::kIterativeRefinement: return {2, 1};
    case Strategy::kNormSynthetic: return {2 * un + 1, 2 * un};
  }
  return {};
}

Generator& Experts::generator(Role r) const {
  auto it = generators.find(r);
  if (it == generators.end() || !it->second) {
    throw ConfigError("no generator for role " + std::string(RoleName(r)));
  }
  return *it->second;
}

Classifier& Experts::classifier(Role r) const {
  auto it = classifiers.find(r);
  if (it == classifiers.end() || !it->second) {
    throw ConfigError("no classifier for role " + std::string(RoleName(r)));
  }
  return *it->second;
}

void Experts::CheckCovers(Strategy s) const {
  for (Role r : RequiredRoles(s)) {
    if (KindOf(r) == RoleKind::kGenerator) {
      generator(r);
    } else {
      classifier(r);
    }
  }
}

ChainInput ChainInputFromSample(const TaskSample& sample, Strategy s) {
  const std::string where = "sample '" + sample.sample_id + "': ";
  std::map<std::string, std::string, std::less<>> fields;
  std::string last_token;
  for (auto& [tok, field] : ParseGenerationInput(sample.input_text)) {
    last_token = tok;
    fields[tok] = std::move(field);
  }
  auto need = [&](std::string_view tok) -> const std::string& {
    auto it = fields.find(tok);
    if (it == fields.end() || it->second.empty()) {
      throw DataError(where + "input lacks " + std::string(tok) +
                      " required by " + std::string(StrategyName(s)));
    }
    return it->second;
  };

  ChainInput in;
  in.sample_id = sample.sample_id;
  in.reference = sample.target_text;
  switch (s) {
    case Strategy::kActionRanking:
    case Strategy::kAbductiveRefinement:
      if (sample.task != Task::kActionGen) {
        throw DataError(where + "action strategies need action_gen samples");
      }
      in.norm = need(tokens::kNorm);
      in.situation = need(tokens::kSituation);
      in.intention = need(tokens::kIntention);
      if (last_token == tokens::kImmoralAction) {
        in.orientation = Orientation::kImmoral;
      } else if (last_token == tokens::kMoralAction) {
        in.orientation = Orientation::kMoral;
      } else {
        throw DataError(where + "action prompt must end in an action token");
      }
      break;
    case Strategy::kConseqRanking:
    case Strategy::kIterativeRefinement:
      if (sample.task != Task::kConseqGen) {
        throw DataError(where +
                        "consequence strategies need conseq_gen samples");
      }
      in.norm = need(tokens::kNorm);
      in.situation = need(tokens::kSituation);
      in.intention = need(tokens::kIntention);
      in.action = need(tokens::kAction);
      in.orientation = sample.orientation == SampleOrientation::kImmoral
                           ? Orientation::kImmoral
                           : Orientation::kMoral;
      break;
    case Strategy::kNormSynthetic:
      if (sample.task != Task::kNormGen) {
        throw DataError(where + "norm synthesis needs norm_gen samples");
      }
      in.situation = need(tokens::kSituation);
      in.intention = need(tokens::kIntention);
      in.moral_action = need(tokens::kMoralAction);
      in.immoral_action = need(tokens::kImmoralAction);
      break;
  }
  return in;
}

int RankCandidates(std::vector<Candidate>& candidates, Classifier& classifier,
                   std::span<const std::string> labels,
                   std::string_view grounding, std::string_view target_label) {
  if (candidates.empty()) throw ConfigError("cannot rank zero candidates");
  int best = 0;
  for (size_t i = 0; i < candidates.size(); ++i) {
    const ClassDistribution d = classifier.Classify(
        ClassificationInput(grounding, candidates[i].text), labels);
    d.Validate(labels);
    candidates[i].score = d.prob(target_label);
    const Candidate& b = candidates[static_cast<size_t>(best)];
    if (*candidates[i].score > *b.score ||
        (*candidates[i].score == *b.score &&
         candidates[i].gen_index < b.gen_index)) {
      best = static_cast<int>(i);
    }
  }
  return best;
}

PipelineTrace RunActionRanking(const ChainInput& in, const ChainConfig& cfg,
                               const Experts& experts) {
  return Guard(in, Strategy::kActionRanking, [&](TraceBuilder& b) {
    const Orientation o = EffectiveOrientation(in, cfg);
    b.GenerateAndRank(experts, Role::kActionGenContext, Role::kActionClsContext,
                      ActionPrompt(in.norm, in.situation, in.intention, o),
                      StageParams(cfg, in, "action", cfg.decode.n),
                      ContextOf(in), TargetActionLabel(o));
  });
}

PipelineTrace RunAbductiveRefinement(const ChainInput& in,
                                     const ChainConfig& cfg,
                                     const Experts& experts) {
  return Guard(in, Strategy::kAbductiveRefinement, [&](TraceBuilder& b) {
    const Orientation o = EffectiveOrientation(in, cfg);
    const int n = cfg.decode.n;
    const std::string action = b.GenerateAndRank(
        experts, Role::kActionGenContext, Role::kActionClsContext,
        ActionPrompt(in.norm, in.situation, in.intention, o),
        StageParams(cfg, in, "action", n), ContextOf(in),
        TargetActionLabel(o));
    const std::string consequence = b.GenerateAndRank(
        experts, Role::kConseqGenContextAction, Role::kConseqClsContextAction,
        ConsequenceGivenContextPrompt(in.norm, in.situation, in.intention,
                                      action),
        StageParams(cfg, in, "conseq", n),
        ContextActionGrounding(in.norm, in.situation, in.intention, action),
        kPlausibleLabel);
    b.GenerateAndRank(
        experts, Role::kActionGenContextConseq, Role::kActionClsContextConseq,
        ActionGivenConsequencePrompt(in.norm, in.situation, in.intention,
                                     consequence, o),
        StageParams(cfg, in, "refined_action", n),
        ContextActionGrounding(in.norm, in.situation, in.intention,
                               consequence),
        TargetActionLabel(o));
  });
}

PipelineTrace RunConseqRanking(const ChainInput& in, const ChainConfig& cfg,
                               const Experts& experts) {
  return Guard(in, Strategy::kConseqRanking, [&](TraceBuilder& b) {
    b.GenerateAndRank(
        experts, Role::kConseqGenContextAction, Role::kConseqClsContextAction,
        ConsequenceGivenContextPrompt(in.norm, in.situation, in.intention,
                                      in.action),
        StageParams(cfg, in, "conseq", cfg.decode.n),
        ContextActionGrounding(in.norm, in.situation, in.intention, in.action),
        kPlausibleLabel);
  });
}

PipelineTrace RunIterativeRefinement(const ChainInput& in,
                                     const ChainConfig& cfg,
                                     const Experts& experts) {
  return Guard(in, Strategy::kIterativeRefinement, [&](TraceBuilder& b) {
    // One draft, labelled by the classifier.
    const std::string prompt = ConsequenceGivenContextPrompt(
        in.norm, in.situation, in.intention, in.action);
    const std::string draft = b.GenerateAndRank(
        experts, Role::kConseqGenContextAction, Role::kConseqClsContextAction,
        prompt, StageParams(cfg, in, "conseq", 1),
        ContextActionGrounding(in.norm, in.situation, in.intention, in.action),
        kPlausibleLabel);
    const double p = *b.trace().steps.back().chosen().score;
    const bool plausible = p >= cfg.plausible_threshold;

    TraceStep refine;
    refine.role = Role::kConseqRefiner;
    refine.input_text = RefinementPrompt(in.norm, in.situation, in.intention,
                                         in.action, draft, plausible);
    refine.candidates =
        b.Generate(experts.generator(Role::kConseqRefiner), refine.input_text,
                   StageParams(cfg, in, "refine", 1));
    b.AddStep(std::move(refine));
  });
}

PipelineTrace RunNormSynthetic(const ChainInput& in, const ChainConfig& cfg,
                               const Experts& experts) {
  return Guard(in, Strategy::kNormSynthetic, [&](TraceBuilder& b) {
    // The norm is what we are predicting, so consequence experts see the
    // context without it.
    const int n = cfg.decode.n;
    std::array<std::string, 2> consequences;
    const std::array<std::pair<Orientation, const std::string*>, 2> actions = {
        {{Orientation::kMoral, &in.moral_action},
         {Orientation::kImmoral, &in.immoral_action}}};
    for (size_t i = 0; i < actions.size(); ++i) {
      const std::string& action = *actions[i].second;
      consequences[i] = b.GenerateAndRank(
          experts, Role::kConseqGenContextAction,
          Role::kConseqClsContextAction,
          ConsequenceGivenContextPrompt("", in.situation, in.intention, action),
          StageParams(cfg, in,
                      "conseq_" + std::string(OrientationName(actions[i].first)),
                      n),
          ContextActionGrounding("", in.situation, in.intention, action),
          kPlausibleLabel);
    }
    TraceStep norm;
    norm.role = Role::kNormGenFull;
    norm.input_text = NormGivenConsequencesPrompt(
        in.situation, in.intention, in.moral_action, consequences[0],
        in.immoral_action, consequences[1]);
    norm.candidates =
        b.Generate(experts.generator(Role::kNormGenFull), norm.input_text,
                   StageParams(cfg, in, "norm", 1));
    b.AddStep(std::move(norm));
  });
}

PipelineTrace RunChain(const ChainInput& in, const ChainConfig& cfg,
                       const Experts& experts) {
  switch (cfg.strategy) {
    case Strategy::kActionRanking: return RunActionRanking(in, cfg, experts);
    case Strategy::kAbductiveRefinement:
      return RunAbductiveRefinement(in, cfg, experts);
    case Strategy::kConseqRanking: return RunConseqRanking(in, cfg, experts);
    case Strategy::kIterativeRefinement:
      return RunIterativeRefinement(in, cfg, experts);
    case Strategy::kNormSynthetic: return RunNormSynthetic(in, cfg, experts);
  }
  throw ConfigError("unknown strategy");
}

std::vector<PipelineTrace> RunBatch(std::span<const ChainInput> inputs,
                                    const ChainConfig& cfg,
                                    const Experts& experts, size_t workers) {
  cfg.decode.Validate();
  experts.CheckCovers(cfg.strategy);
  std::vector<PipelineTrace> traces(inputs.size());
  ParallelFor(inputs.size(), workers,
              [&](size_t i) { traces[i] = RunChain(inputs[i], cfg, experts); });
  std::stable_sort(traces.begin(), traces.end(),
                   [](const PipelineTrace& a, const PipelineTrace& b) {
                     return a.sample_id < b.sample_id;
                   });
  return traces;
}

bool SatisfiesArgmax(const PipelineTrace& trace) {
  for (const TraceStep& step : trace.steps) {
    if (!step.ranker) continue;
    const Candidate& chosen = step.chosen();
    if (!chosen.score) return false;
    for (const Candidate& c : step.candidates) {
      if (!c.score || *c.score > *chosen.score) return false;
      if (*c.score == *chosen.score && c.gen_index < chosen.gen_index) {
        return false;
      }
    }
  }
  return true;
}

std::optional<bool> Judge(const ChainInput& in, Strategy s,
                          std::string_view output, Classifier& judge,
                          const ChainConfig& cfg) {
  switch (s) {
    case Strategy::kActionRanking:
    case Strategy::kAbductiveRefinement: {
      static const std::vector<std::string> kLabels = {
          std::string(kMoralLabel), std::string(kImmoralLabel)};
      const std::string_view label =
          TargetActionLabel(EffectiveOrientation(in, cfg));
      const ClassDistribution d =
          judge.Classify(ClassificationInput(ContextOf(in), output), kLabels);
      d.Validate(kLabels);
      return d.prob(label) >= 0.5;
    }
    case Strategy::kConseqRanking:
    case Strategy::kIterativeRefinement: {
      static const std::vector<std::string> kLabels = {
          std::string(kPlausibleLabel), std::string(kImplausibleLabel)};
      const ClassDistribution d = judge.Classify(
          ClassificationInput(ContextActionGrounding(in.norm, in.situation,
                                                     in.intention, in.action),
                              output),
          kLabels);
      d.Validate(kLabels);
      return d.prob(kPlausibleLabel) >= 0.5;
    }
    case Strategy::kNormSynthetic:
      return std::nullopt;
  }
  return std::nullopt;
}

BatchSummary Summarize(std::span<const ChainInput> inputs,
                       std::span<const PipelineTrace> traces,
                       const ChainConfig& cfg, Classifier* judge,
                       size_t workers) {
  BatchSummary summary;
  summary.strategy = cfg.strategy;
  summary.samples = traces.size();
  summary.expected_per_sample = ExpectedBudget(cfg.strategy, cfg.decode.n);
  for (const PipelineTrace& t : traces) {
    (t.ok ? summary.succeeded : summary.failed) += 1;
    summary.used.generated += t.used.generated;
    summary.used.classified += t.used.classified;
  }
  if (judge == nullptr || cfg.strategy == Strategy::kNormSynthetic) {
    return summary;
  }

  std::unordered_map<std::string, const ChainInput*> by_id;
  for (const ChainInput& in : inputs) by_id[in.sample_id] = &in;
  std::vector<int> satisfied(traces.size(), 0);
  std::vector<int> baseline(traces.size(), 0);
  ParallelFor(traces.size(), workers, [&](size_t i) {
    const PipelineTrace& t = traces[i];
    auto it = by_id.find(t.sample_id);
    if (!t.ok || it == by_id.end() || t.steps.empty()) return;
    satisfied[i] = Judge(*it->second, cfg.strategy, t.final_text, *judge, cfg)
                       .value_or(false);
    baseline[i] = Judge(*it->second, cfg.strategy,
                        t.steps.front().candidates.front().text, *judge, cfg)
                      .value_or(false);
  });
  size_t sat = 0;
  size_t base = 0;
  for (size_t i = 0; i < traces.size(); ++i) {
    sat += static_cast<size_t>(satisfied[i]);
    base += static_cast<size_t>(baseline[i]);
  }
  summary.satisfied = sat;
  summary.baseline_satisfied = base;
  if (!traces.empty()) {
    summary.satisfaction_rate =
        static_cast<double>(sat) / static_cast<double>(traces.size());
    summary.baseline_rate =
        static_cast<double>(base) / static_cast<double>(traces.size());
  }
  return summary;
}

std::string TraceToJsonLine(const PipelineTrace& trace) {
  ordered_json j;
  j["sample_id"] = trace.sample_id;
  j["strategy"] = StrategyName(trace.strategy);
  j["status"] = trace.ok ? "ok" : "error";
  if (!trace.ok) j["error"] = trace.error;
  ordered_json steps = ordered_json::array();
  for (const TraceStep& s : trace.steps) {
    ordered_json step;
    step["role"] = RoleName(s.role);
    if (s.ranker) {
      step["ranker"] = RoleName(*s.ranker);
      step["target_label"] = s.target_label;
    }
    step["input_text"] = s.input_text;
    ordered_json cands = ordered_json::array();
    for (const Candidate& c : s.candidates) {
      ordered_json cj;
      cj["gen_index"] = c.gen_index;
      cj["text"] = c.text;
      if (c.score) cj["score"] = *c.score;
      cands.push_back(std::move(cj));
    }
    step["candidates"] = std::move(cands);
    step["chosen_index"] = s.chosen_index;
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  j["final_text"] = trace.final_text;
  j["generated"] = trace.used.generated;
  j["classified"] = trace.used.classified;
  return j.dump();
}

std::string SummaryToJson(const BatchSummary& s) {
  ordered_json j;
  j["strategy"] = StrategyName(s.strategy);
  j["samples"] = s.samples;
  j["succeeded"] = s.succeeded;
  j["failed"] = s.failed;
  j["generated"] = s.used.generated;
  j["classified"] = s.used.classified;
  j["calls"] = s.used.calls();
  j["expected_generated_per_sample"] = s.expected_per_sample.generated;
  j["expected_classified_per_sample"] = s.expected_per_sample.classified;
  if (s.satisfied) {
    j["satisfied"] = *s.satisfied;
    j["satisfaction_rate"] = *s.satisfaction_rate;
    j["baseline_satisfied"] = *s.baseline_satisfied;
    j["baseline_rate"] = *s.baseline_rate;
  }
  return j.dump(2);
}

}  // namespace normchain::coe
