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

#ifndef NORMCHAIN_COE_H_
#define NORMCHAIN_COE_H_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "normchain/corpus.h"
#include "normchain/providers.h"
#include "normchain/tasks.h"

// Chain-of-Experts decoding: generators propose candidates, classifiers rank
// them, and later stages condition on earlier winners.
namespace normchain::coe {

enum class Strategy {
  kActionRanking,
  kAbductiveRefinement,
  kConseqRanking,
  kIterativeRefinement,
  kNormSynthetic,
};

std::string_view StrategyName(Strategy s);
std::optional<Strategy> ParseStrategy(std::string_view name);

// Roles a strategy consumes (judge and embedder are never required).
const std::set<Role>& RequiredRoles(Strategy s);

struct Budget {
  size_t generated = 0;   // candidates produced
  size_t classified = 0;  // classifier calls
  size_t calls() const { return generated + classified; }
  bool operator==(const Budget&) const = default;
};

// Exact per-sample provider budget of a strategy for n samples per step.
Budget ExpectedBudget(Strategy s, int n);

// Expert instances keyed by role.
struct Experts {
  std::map<Role, std::shared_ptr<Generator>> generators;
  std::map<Role, std::shared_ptr<Classifier>> classifiers;

  Generator& generator(Role r) const;
  Classifier& classifier(Role r) const;
  // Throws ConfigError unless every required role is present.
  void CheckCovers(Strategy s) const;
};

struct ChainConfig {
  Strategy strategy = Strategy::kActionRanking;
  DecodeParams decode;
  // Overrides the sample's orientation for action strategies when set.
  std::optional<Orientation> target_orientation;
  // Plausible-probability threshold for iterative refinement labels.
  double plausible_threshold = 0.5;
};

// Story fields a chain needs, recovered from a task sample.
struct ChainInput {
  std::string sample_id;
  std::string norm;
  std::string situation;
  std::string intention;
  std::string action;          // conseq strategies
  std::string moral_action;    // norm synthesis
  std::string immoral_action;  // norm synthesis
  Orientation orientation = Orientation::kMoral;
  std::string reference;  // sample target_text, may be empty
};

// Parses the sample's input_text back into fields. Action strategies take
// action_gen samples, consequence strategies conseq_gen samples with
// context, norm synthesis norm_gen samples with context. Throws DataError.
ChainInput ChainInputFromSample(const TaskSample& sample, Strategy s);

struct TraceStep {
  Role role = Role::kActionGenContext;  // generator that produced candidates
  std::optional<Role> ranker;           // classifier, when the step is ranked
  std::string target_label;             // label scored by the ranker
  std::string input_text;               // generator prompt
  std::vector<Candidate> candidates;
  int chosen_index = 0;

  const Candidate& chosen() const {
    return candidates.at(static_cast<size_t>(chosen_index));
  }
};

struct PipelineTrace {
  std::string sample_id;
  Strategy strategy = Strategy::kActionRanking;
  std::vector<TraceStep> steps;
  std::string final_text;
  bool ok = true;
  std::string error;
  Budget used;
};

std::string TraceToJsonLine(const PipelineTrace& trace);

// Scores each candidate with the classifier's posterior for target_label on
// <CLS>grounding<SEP>candidate<SEP> and returns the argmax (lowest gen_index
// on ties). Throws ConfigError for an empty list.
int RankCandidates(std::vector<Candidate>& candidates, Classifier& classifier,
                   std::span<const std::string> labels,
                   std::string_view grounding, std::string_view target_label);

// Strategies. Provider failures do not throw: the returned trace has ok =
// false, the error message and every step completed before the failure.
PipelineTrace RunActionRanking(const ChainInput& in, const ChainConfig& cfg,
                               const Experts& experts);
PipelineTrace RunAbductiveRefinement(const ChainInput& in,
                                     const ChainConfig& cfg,
                                     const Experts& experts);
PipelineTrace RunConseqRanking(const ChainInput& in, const ChainConfig& cfg,
                               const Experts& experts);
PipelineTrace RunIterativeRefinement(const ChainInput& in,
                                     const ChainConfig& cfg,
                                     const Experts& experts);
PipelineTrace RunNormSynthetic(const ChainInput& in, const ChainConfig& cfg,
                               const Experts& experts);

PipelineTrace RunChain(const ChainInput& in, const ChainConfig& cfg,
                       const Experts& experts);

// Runs every input on up to `workers` threads. Output is sorted by
// sample_id and does not depend on the worker count.
std::vector<PipelineTrace> RunBatch(std::span<const ChainInput> inputs,
                                    const ChainConfig& cfg,
                                    const Experts& experts, size_t workers = 1);

// True if no candidate of any ranked step outscores the chosen one.
bool SatisfiesArgmax(const PipelineTrace& trace);

// Asks a judge classifier whether an output meets the strategy's target:
// the target orientation for actions, plausibility for consequences.
// Returns nullopt for norm synthesis, which has no judge label.
std::optional<bool> Judge(const ChainInput& in, Strategy s,
                          std::string_view output, Classifier& judge,
                          const ChainConfig& cfg);

struct BatchSummary {
  Strategy strategy = Strategy::kActionRanking;
  size_t samples = 0;
  size_t succeeded = 0;
  size_t failed = 0;
  Budget used;
  Budget expected_per_sample;
  // Filled when a judge is available.
  std::optional<size_t> satisfied;
  std::optional<size_t> baseline_satisfied;  // first candidate of step 1
  std::optional<double> satisfaction_rate;
  std::optional<double> baseline_rate;
};

std::string SummaryToJson(const BatchSummary& summary);

BatchSummary Summarize(std::span<const ChainInput> inputs,
                       std::span<const PipelineTrace> traces,
                       const ChainConfig& cfg, Classifier* judge,
                       size_t workers = 1);

}  // namespace normchain::coe

#endif  // NORMCHAIN_COE_H_
