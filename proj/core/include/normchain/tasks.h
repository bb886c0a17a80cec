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

#ifndef NORMCHAIN_TASKS_H_
#define NORMCHAIN_TASKS_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "normchain/corpus.h"

namespace normchain {

enum class Task { kActionCls, kConseqCls, kActionGen, kConseqGen, kNormGen };

std::string_view TaskName(Task t);
std::optional<Task> ParseTask(std::string_view name);

enum class SampleOrientation { kMoral, kImmoral, kNone };
enum class Label { kPositive, kNegative, kNone };

std::string_view SampleOrientationName(SampleOrientation o);  // "na" for none
std::string_view LabelName(Label l);                          // "n/a" for none

struct TaskSample {
  std::string sample_id;
  std::string story_id;
  Task task = Task::kActionCls;
  std::string setting;
  SampleOrientation orientation = SampleOrientation::kNone;
  std::string input_text;
  Label label = Label::kNone;
  std::string target_text;

  bool operator==(const TaskSample&) const = default;
};

std::string TaskSampleToJsonLine(const TaskSample& sample);
TaskSample TaskSampleFromJsonLine(std::string_view line,
                                  size_t line_number = 0);
std::vector<TaskSample> LoadTaskSamples(const std::filesystem::path& path);
void SaveTaskSamples(const std::filesystem::path& path,
                     std::span<const TaskSample> samples);

// Closed catalog of grounding settings per task.
const std::vector<std::string>& SettingsFor(Task task);
bool IsKnownSetting(Task task, std::string_view setting);

// Special tokens. Story text containing any of them is rejected.
namespace tokens {
inline constexpr std::string_view kCls = "<CLS>";
inline constexpr std::string_view kSep = "<SEP>";
inline constexpr std::string_view kNorm = "<|NRM|>";
inline constexpr std::string_view kSituation = "<|SIT|>";
inline constexpr std::string_view kIntention = "<|INT|>";
inline constexpr std::string_view kAction = "<|ACT|>";
inline constexpr std::string_view kConsequence = "<|CSQ|>";
inline constexpr std::string_view kMoralAction = "<|M_ACT|>";
inline constexpr std::string_view kImmoralAction = "<|I_ACT|>";
inline constexpr std::string_view kMoralConsequence = "<|M_CSQ|>";
inline constexpr std::string_view kImmoralConsequence = "<|I_CSQ|>";
inline constexpr std::string_view kPlausible = "<|CSQ_PL|>";
inline constexpr std::string_view kImplausible = "<|CSQ_IMPL|>";
}  // namespace tokens

// True if text contains a special token or the "<|" token prefix.
bool ContainsSpecialToken(std::string_view text);

// --- Input formats -------------------------------------------------------
// Every builder joins tokens and fields with single spaces.

// <CLS>grounding<SEP>target<SEP>
std::string ClassificationInput(std::string_view grounding,
                                std::string_view target);

// "norm situation intention"
std::string ContextGrounding(std::string_view norm, std::string_view situation,
                             std::string_view intention);

std::string ActionPrompt(std::string_view norm, std::string_view situation,
                         std::string_view intention, Orientation o);
std::string ActionGivenConsequencePrompt(std::string_view norm,
                                         std::string_view situation,
                                         std::string_view intention,
                                         std::string_view consequence,
                                         Orientation o);
std::string ConsequencePrompt(std::string_view action);
// An empty norm drops the <|NRM|> segment (used when the norm is unknown).
std::string ConsequenceGivenContextPrompt(std::string_view norm,
                                          std::string_view situation,
                                          std::string_view intention,
                                          std::string_view action);
std::string NormPrompt(std::string_view moral_action,
                       std::string_view immoral_action);
std::string NormGivenContextPrompt(std::string_view situation,
                                   std::string_view intention,
                                   std::string_view moral_action,
                                   std::string_view immoral_action);
std::string NormGivenConsequencesPrompt(std::string_view situation,
                                        std::string_view intention,
                                        std::string_view moral_action,
                                        std::string_view moral_consequence,
                                        std::string_view immoral_action,
                                        std::string_view immoral_consequence);
std::string RefinementPrompt(std::string_view norm, std::string_view situation,
                             std::string_view intention,
                             std::string_view action, std::string_view draft,
                             bool plausible);

// Splits a generation input back into (special token, following field)
// pairs. The field after the final token is empty.
std::vector<std::pair<std::string, std::string>> ParseGenerationInput(
    std::string_view input);

struct ClassificationParts {
  std::string grounding;
  std::string target;
};
std::optional<ClassificationParts> ParseClassificationInput(
    std::string_view input);

// --- Sample builders -----------------------------------------------------
// Output is ordered by story id, then moral before immoral. Throws
// ConfigError for an unknown setting and DataError for stories containing
// special tokens.

std::vector<TaskSample> BuildActionClassification(
    std::span<const Story> stories, std::string_view setting);
std::vector<TaskSample> BuildConsequenceClassification(
    std::span<const Story> stories, std::string_view setting);
std::vector<TaskSample> BuildGenerationSamples(std::span<const Story> stories,
                                               Task task,
                                               std::string_view setting);

// Dispatches on task.
std::vector<TaskSample> BuildSamples(std::span<const Story> stories, Task task,
                                     std::string_view setting);

}  // namespace normchain

#endif  // NORMCHAIN_TASKS_H_
