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

#include "normchain/tasks.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>

#include "normchain/error.h"
#include "normchain/text.h"

namespace normchain {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::array<std::string_view, 5> kTaskNames = {
    "action_cls", "conseq_cls", "action_gen", "conseq_gen", "norm_gen"};

constexpr std::array<std::string_view, 13> kAllTokens = {
    tokens::kNorm,           tokens::kSituation,
    tokens::kIntention,      tokens::kAction,
    tokens::kConsequence,    tokens::kMoralAction,
    tokens::kImmoralAction,  tokens::kMoralConsequence,
    tokens::kImmoralConsequence, tokens::kPlausible,
    tokens::kImplausible,    tokens::kCls,
    tokens::kSep,
};

// Space-joins alternating tokens and fields.
std::string Compose(std::initializer_list<std::string_view> parts) {
  std::string out;
  for (std::string_view p : parts) {
    if (!out.empty()) out.push_back(' ');
    out.append(p);
  }
  return out;
}

std::string_view ActionToken(Orientation o) {
  return o == Orientation::kMoral ? tokens::kMoralAction
                                  : tokens::kImmoralAction;
}

std::string_view ConsequenceToken(Orientation o) {
  return o == Orientation::kMoral ? tokens::kMoralConsequence
                                  : tokens::kImmoralConsequence;
}

SampleOrientation ToSampleOrientation(Orientation o) {
  return o == Orientation::kMoral ? SampleOrientation::kMoral
                                  : SampleOrientation::kImmoral;
}

std::vector<const Story*> SortedChecked(std::span<const Story> stories) {
  std::vector<const Story*> sorted;
  sorted.reserve(stories.size());
  for (const Story& s : stories) {
    for (Category c : kAllCategories) {
      if (ContainsSpecialToken(s.field(c))) {
        throw DataError("story '" + s.id + "' field '" +
                        std::string(CategoryName(c)) +
                        "' contains a reserved special token");
      }
    }
    sorted.push_back(&s);
  }
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Story* a, const Story* b) { return a->id < b->id; });
  return sorted;
}

std::string SampleId(const Story& s, Task task, std::string_view setting,
                     SampleOrientation o, Label polarity = Label::kNone) {
  std::string id = s.id + ":" + std::string(TaskName(task)) + ":" +
                   std::string(setting) + ":" +
                   std::string(SampleOrientationName(o));
  if (polarity != Label::kNone) id += ":" + std::string(LabelName(polarity));
  return id;
}

void RequireSetting(Task task, std::string_view setting) {
  if (!IsKnownSetting(task, setting)) {
    throw ConfigError("unknown setting '" + std::string(setting) +
                      "' for task " + std::string(TaskName(task)));
  }
}

template <typename E>
E ParseEnum(const ordered_json& j, std::string_view key,
            std::initializer_list<std::pair<std::string_view, E>> options,
            const std::string& where) {
  auto it = j.find(std::string(key));
  if (it == j.end() || !it->is_string()) {
    throw DataError(where + "missing or non-string field '" + std::string(key) +
                    "'");
  }
  const std::string value = it->get<std::string>();
  for (const auto& [name, e] : options) {
    if (name == value) return e;
  }
  throw DataError(where + "bad value '" + value + "' for field '" +
                  std::string(key) + "'");
}

}  // namespace

std::string_view TaskName(Task t) { return kTaskNames[static_cast<size_t>(t)]; }

std::optional<Task> ParseTask(std::string_view name) {
  for (size_t i = 0; i < kTaskNames.size(); ++i) {
    if (kTaskNames[i] == name) return static_cast<Task>(i);
  }
  return std::nullopt;
}

std::string_view SampleOrientationName(SampleOrientation o) {
  switch (o) {
    case SampleOrientation::kMoral: return "moral";
    case SampleOrientation::kImmoral: return "immoral";
    case SampleOrientation::kNone: return "na";
  }
  return "na";
}

std::string_view LabelName(Label l) {
  switch (l) {
    case Label::kPositive: return "positive";
    case Label::kNegative: return "negative";
    case Label::kNone: return "n/a";
  }
  return "n/a";
}

const std::vector<std::string>& SettingsFor(Task task) {
  static const std::map<Task, std::vector<std::string>> kCatalog = {
      {Task::kActionCls,
       {"action", "action+norm", "action+context",
        "action+context+consequence"}},
      {Task::kConseqCls, {"consequence+action", "consequence+context+action"}},
      {Task::kActionGen, {"context", "context+consequence"}},
      {Task::kConseqGen, {"action", "context+action"}},
      {Task::kNormGen,
       {"actions", "context+actions", "context+actions+consequences"}},
  };
  return kCatalog.at(task);
}

bool IsKnownSetting(Task task, std::string_view setting) {
  const auto& settings = SettingsFor(task);
  return std::find(settings.begin(), settings.end(), setting) != settings.end();
}

bool ContainsSpecialToken(std::string_view text) {
  if (text.find("<|") != std::string_view::npos) return true;
  return text.find(tokens::kCls) != std::string_view::npos ||
         text.find(tokens::kSep) != std::string_view::npos;
}

std::string ClassificationInput(std::string_view grounding,
                                std::string_view target) {
  std::string out;
  out.reserve(grounding.size() + target.size() + 15);
  out.append(tokens::kCls).append(grounding).append(tokens::kSep);
  out.append(target).append(tokens::kSep);
  return out;
}

std::string ContextGrounding(std::string_view norm, std::string_view situation,
                             std::string_view intention) {
  return Compose({norm, situation, intention});
}

std::string ActionPrompt(std::string_view norm, std::string_view situation,
                         std::string_view intention, Orientation o) {
  return Compose({tokens::kNorm, norm, tokens::kSituation, situation,
                  tokens::kIntention, intention, ActionToken(o)});
}

std::string ActionGivenConsequencePrompt(std::string_view norm,
                                         std::string_view situation,
                                         std::string_view intention,
                                         std::string_view consequence,
                                         Orientation o) {
  return Compose({tokens::kNorm, norm, tokens::kSituation, situation,
                  tokens::kIntention, intention, ConsequenceToken(o),
                  consequence, ActionToken(o)});
}

std::string ConsequencePrompt(std::string_view action) {
  return Compose({tokens::kAction, action, tokens::kConsequence});
}

std::string ConsequenceGivenContextPrompt(std::string_view norm,
                                          std::string_view situation,
                                          std::string_view intention,
                                          std::string_view action) {
  if (norm.empty()) {
    return Compose({tokens::kSituation, situation, tokens::kIntention,
                    intention, tokens::kAction, action, tokens::kConsequence});
  }
  return Compose({tokens::kNorm, norm, tokens::kSituation, situation,
                  tokens::kIntention, intention, tokens::kAction, action,
                  tokens::kConsequence});
}

std::string NormPrompt(std::string_view moral_action,
                       std::string_view immoral_action) {
  return Compose({tokens::kMoralAction, moral_action, tokens::kImmoralAction,
                  immoral_action, tokens::kNorm});
}

std::string NormGivenContextPrompt(std::string_view situation,
                                   std::string_view intention,
                                   std::string_view moral_action,
                                   std::string_view immoral_action) {
  return Compose({tokens::kSituation, situation, tokens::kIntention, intention,
                  tokens::kMoralAction, moral_action, tokens::kImmoralAction,
                  immoral_action, tokens::kNorm});
}

std::string NormGivenConsequencesPrompt(std::string_view situation,
                                        std::string_view intention,
                                        std::string_view moral_action,
                                        std::string_view moral_consequence,
                                        std::string_view immoral_action,
                                        std::string_view immoral_consequence) {
  return Compose({tokens::kSituation, situation, tokens::kIntention, intention,
                  tokens::kMoralAction, moral_action,
                  tokens::kMoralConsequence, moral_consequence,
                  tokens::kImmoralAction, immoral_action,
                  tokens::kImmoralConsequence, immoral_consequence,
                  tokens::kNorm});
}

std::string RefinementPrompt(std::string_view norm, std::string_view situation,
                             std::string_view intention,
                             std::string_view action, std::string_view draft,
                             bool plausible) {
  return Compose({tokens::kNorm, norm, tokens::kSituation, situation,
                  tokens::kIntention, intention, tokens::kAction, action,
                  tokens::kConsequence, draft,
                  plausible ? tokens::kPlausible : tokens::kImplausible,
                  tokens::kConsequence});
}

std::vector<std::pair<std::string, std::string>> ParseGenerationInput(
    std::string_view input) {
  std::vector<std::pair<std::string, std::string>> out;
  size_t pos = 0;
  while (pos < input.size()) {
    // Earliest special token at or after pos.
    size_t best = std::string_view::npos;
    std::string_view best_token;
    for (std::string_view tok : kAllTokens) {
      const size_t at = input.find(tok, pos);
      if (at < best) {
        best = at;
        best_token = tok;
      }
    }
    if (best == std::string_view::npos) {
      if (out.empty()) return {};
      out.back().second.append(input.substr(pos));
      break;
    }
    if (!out.empty()) out.back().second.append(input.substr(pos, best - pos));
    out.emplace_back(std::string(best_token), std::string());
    pos = best + best_token.size();
  }
  for (auto& [tok, field] : out) field = std::string(text::Trim(field));
  return out;
}

std::optional<ClassificationParts> ParseClassificationInput(
    std::string_view input) {
  if (input.substr(0, tokens::kCls.size()) != tokens::kCls) return std::nullopt;
  input.remove_prefix(tokens::kCls.size());
  const size_t sep1 = input.find(tokens::kSep);
  if (sep1 == std::string_view::npos) return std::nullopt;
  std::string_view rest = input.substr(sep1 + tokens::kSep.size());
  const size_t sep2 = rest.find(tokens::kSep);
  if (sep2 == std::string_view::npos ||
      sep2 + tokens::kSep.size() != rest.size()) {
    return std::nullopt;
  }
  return ClassificationParts{std::string(input.substr(0, sep1)),
                             std::string(rest.substr(0, sep2))};
}

std::vector<TaskSample> BuildActionClassification(
    std::span<const Story> stories, std::string_view setting) {
  RequireSetting(Task::kActionCls, setting);
  std::vector<TaskSample> out;
  out.reserve(2 * stories.size());
  for (const Story* s : SortedChecked(stories)) {
    for (Orientation o : {Orientation::kMoral, Orientation::kImmoral}) {
      std::string grounding;
      if (setting == "action+norm") {
        grounding = s->norm;
      } else if (setting == "action+context") {
        grounding = ContextGrounding(s->norm, s->situation, s->intention);
      } else if (setting == "action+context+consequence") {
        grounding = Compose({s->norm, s->situation, s->intention,
                             s->consequence(o)});
      }
      TaskSample sample;
      sample.story_id = s->id;
      sample.task = Task::kActionCls;
      sample.setting = std::string(setting);
      sample.orientation = ToSampleOrientation(o);
      sample.sample_id =
          SampleId(*s, Task::kActionCls, setting, sample.orientation);
      sample.input_text = ClassificationInput(grounding, s->action(o));
      sample.label =
          o == Orientation::kMoral ? Label::kPositive : Label::kNegative;
      out.push_back(std::move(sample));
    }
  }
  return out;
}

std::vector<TaskSample> BuildConsequenceClassification(
    std::span<const Story> stories, std::string_view setting) {
  RequireSetting(Task::kConseqCls, setting);
  std::vector<TaskSample> out;
  out.reserve(4 * stories.size());
  for (const Story* s : SortedChecked(stories)) {
    for (Orientation o : {Orientation::kMoral, Orientation::kImmoral}) {
      const Orientation other = o == Orientation::kMoral
                                    ? Orientation::kImmoral
                                    : Orientation::kMoral;
      const std::string grounding =
          setting == "consequence+action"
              ? s->action(o)
              : Compose({s->norm, s->situation, s->intention, s->action(o)});
      // Matching consequence first, then the one from the opposite path.
      for (const auto& [conseq_of, label] :
           {std::pair{o, Label::kPositive}, std::pair{other, Label::kNegative}}) {
        TaskSample sample;
        sample.story_id = s->id;
        sample.task = Task::kConseqCls;
        sample.setting = std::string(setting);
        sample.orientation = ToSampleOrientation(o);
        sample.sample_id = SampleId(*s, Task::kConseqCls, setting,
                                    sample.orientation, label);
        sample.input_text =
            ClassificationInput(grounding, s->consequence(conseq_of));
        sample.label = label;
        out.push_back(std::move(sample));
      }
    }
  }
  return out;
}

std::vector<TaskSample> BuildGenerationSamples(std::span<const Story> stories,
                                               Task task,
                                               std::string_view setting) {
  if (task != Task::kActionGen && task != Task::kConseqGen &&
      task != Task::kNormGen) {
    throw ConfigError(std::string(TaskName(task)) +
                      " is not a generation task");
  }
  RequireSetting(task, setting);
  std::vector<TaskSample> out;
  for (const Story* s : SortedChecked(stories)) {
    auto make = [&](SampleOrientation o, std::string input,
                    const std::string& target) {
      TaskSample sample;
      sample.story_id = s->id;
      sample.task = task;
      sample.setting = std::string(setting);
      sample.orientation = o;
      sample.sample_id = SampleId(*s, task, setting, o);
      sample.input_text = std::move(input);
      sample.target_text = target;
      out.push_back(std::move(sample));
    };
    if (task == Task::kNormGen) {
      std::string input;
      if (setting == "actions") {
        input = NormPrompt(s->moral_action, s->immoral_action);
      } else if (setting == "context+actions") {
        input = NormGivenContextPrompt(s->situation, s->intention,
                                       s->moral_action, s->immoral_action);
      } else {
        input = NormGivenConsequencesPrompt(
            s->situation, s->intention, s->moral_action, s->moral_consequence,
            s->immoral_action, s->immoral_consequence);
      }
      make(SampleOrientation::kNone, std::move(input), s->norm);
      continue;
    }
    for (Orientation o : {Orientation::kMoral, Orientation::kImmoral}) {
      std::string input;
      if (task == Task::kActionGen) {
        input = setting == "context"
                    ? ActionPrompt(s->norm, s->situation, s->intention, o)
                    : ActionGivenConsequencePrompt(s->norm, s->situation,
                                                   s->intention,
                                                   s->consequence(o), o);
        make(ToSampleOrientation(o), std::move(input), s->action(o));
      } else {
        input = setting == "action"
                    ? ConsequencePrompt(s->action(o))
                    : ConsequenceGivenContextPrompt(s->norm, s->situation,
                                                    s->intention,
                                                    s->action(o));
        make(ToSampleOrientation(o), std::move(input), s->consequence(o));
      }
    }
  }
  return out;
}

std::vector<TaskSample> BuildSamples(std::span<const Story> stories, Task task,
                                     std::string_view setting) {
  switch (task) {
    case Task::kActionCls: return BuildActionClassification(stories, setting);
    case Task::kConseqCls:
      return BuildConsequenceClassification(stories, setting);
    default: return BuildGenerationSamples(stories, task, setting);
  }
}

std::string TaskSampleToJsonLine(const TaskSample& s) {
  ordered_json j;
  j["sample_id"] = s.sample_id;
  j["story_id"] = s.story_id;
  j["task"] = TaskName(s.task);
  j["setting"] = s.setting;
  j["orientation"] = SampleOrientationName(s.orientation);
  j["input_text"] = s.input_text;
  j["label"] = LabelName(s.label);
  j["target_text"] = s.target_text;
  return j.dump();
}

TaskSample TaskSampleFromJsonLine(std::string_view line, size_t line_number) {
  const std::string where =
      line_number == 0 ? std::string()
                       : "line " + std::to_string(line_number) + ": ";
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(where + "malformed sample: " + e.what());
  }
  if (!j.is_object()) throw DataError(where + "sample is not an object");
  auto str = [&](std::string_view key) {
    auto it = j.find(std::string(key));
    if (it == j.end() || !it->is_string()) {
      throw DataError(where + "missing or non-string field '" +
                      std::string(key) + "'");
    }
    return it->get<std::string>();
  };
  TaskSample s;
  s.sample_id = str("sample_id");
  s.story_id = str("story_id");
  const auto task = ParseTask(str("task"));
  if (!task) throw DataError(where + "unknown task");
  s.task = *task;
  s.setting = str("setting");
  s.orientation = ParseEnum<SampleOrientation>(
      j, "orientation",
      {{"moral", SampleOrientation::kMoral},
       {"immoral", SampleOrientation::kImmoral},
       {"na", SampleOrientation::kNone}},
      where);
  s.input_text = str("input_text");
  s.label = ParseEnum<Label>(j, "label",
                             {{"positive", Label::kPositive},
                              {"negative", Label::kNegative},
                              {"n/a", Label::kNone}},
                             where);
  s.target_text = str("target_text");
  return s;
}

std::vector<TaskSample> LoadTaskSamples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<TaskSample> out;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (text::Trim(line).empty()) continue;
    out.push_back(TaskSampleFromJsonLine(line, line_number));
  }
  return out;
}

void SaveTaskSamples(const std::filesystem::path& path,
                     std::span<const TaskSample> samples) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  for (const TaskSample& s : samples) out << TaskSampleToJsonLine(s) << '\n';
  if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace normchain
