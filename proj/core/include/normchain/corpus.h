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

#ifndef NORMCHAIN_CORPUS_H_
#define NORMCHAIN_CORPUS_H_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace normchain {

// The seven narrative components of a story.
enum class Category {
  kNorm,
  kSituation,
  kIntention,
  kMoralAction,
  kMoralConsequence,
  kImmoralAction,
  kImmoralConsequence,
};

inline constexpr std::array<Category, 7> kAllCategories = {
    Category::kNorm,           Category::kSituation,
    Category::kIntention,      Category::kMoralAction,
    Category::kMoralConsequence, Category::kImmoralAction,
    Category::kImmoralConsequence,
};

// Record key for a category, e.g. "moral_action".
std::string_view CategoryName(Category c);
std::optional<Category> ParseCategory(std::string_view name);

enum class Orientation { kMoral, kImmoral };

std::string_view OrientationName(Orientation o);

// A branching narrative: shared context (norm, situation, intention) plus a
// moral and an immoral action/consequence path.
struct Story {
  std::string id;
  std::string norm;
  std::string situation;
  std::string intention;
  std::string moral_action;
  std::string moral_consequence;
  std::string immoral_action;
  std::string immoral_consequence;

  const std::string& field(Category c) const;
  std::string& field(Category c);

  const std::string& action(Orientation o) const {
    return o == Orientation::kMoral ? moral_action : immoral_action;
  }
  const std::string& consequence(Orientation o) const {
    return o == Orientation::kMoral ? moral_consequence : immoral_consequence;
  }

  bool operator==(const Story&) const = default;
};

struct Violation {
  std::string field;
  std::string rule;

  bool operator==(const Violation&) const = default;
};

// Returns every broken invariant of a single story; empty means valid.
// Uniqueness of ids is a corpus-level property checked by LoadCorpus.
std::vector<Violation> ValidateStory(const Story& story);

enum class SegmentKind { kContext, kMoralPath, kImmoralPath };

struct SegmentView {
  SegmentKind kind;
  std::vector<std::string> sentences;
};

SegmentView Segment(const Story& story, SegmentKind kind);

// A record that parsed but may still violate story invariants.
struct ParsedRecord {
  size_t line = 0;
  Story story;
};

// Schema-level parse of a line-delimited story file. Blank lines are
// skipped. Throws IoError if the file cannot be read and DataError (with the
// line number) on malformed JSON, a missing key or a non-string value.
std::vector<ParsedRecord> ReadStoryRecords(const std::filesystem::path& path);

// Parses and validates a corpus. In addition to ReadStoryRecords' errors,
// throws DataError for an invalid story or a duplicate id.
std::vector<Story> LoadCorpus(const std::filesystem::path& path);

std::string StoryToJsonLine(const Story& story);
Story StoryFromJsonLine(std::string_view line, size_t line_number = 0);

void SaveCorpus(const std::filesystem::path& path, std::span<const Story> stories);

struct CorpusReport {
  size_t story_count = 0;
  std::map<Category, double> mean_tokens;
};

// Mean whitespace-token count per category. Throws DataError when empty.
CorpusReport MakeCorpusReport(std::span<const Story> stories);

}  // namespace normchain

#endif  // NORMCHAIN_CORPUS_H_
