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

#include "normchain/corpus.h"

#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "normchain/error.h"
#include "normchain/text.h"

namespace normchain {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::array<std::string_view, 7> kCategoryNames = {
    "norm",          "situation",         "intention",
    "moral_action",  "moral_consequence", "immoral_action",
    "immoral_consequence",
};

std::string LinePrefix(size_t line) {
  return line == 0 ? std::string() : "line " + std::to_string(line) + ": ";
}

}  // namespace

std::string_view CategoryName(Category c) {
  return kCategoryNames[static_cast<size_t>(c)];
}

std::optional<Category> ParseCategory(std::string_view name) {
  for (Category c : kAllCategories) {
    if (CategoryName(c) == name) return c;
  }
  return std::nullopt;
}

std::string_view OrientationName(Orientation o) {
  return o == Orientation::kMoral ? "moral" : "immoral";
}

const std::string& Story::field(Category c) const {
  switch (c) {
    case Category::kNorm: return norm;
    case Category::kSituation: return situation;
    case Category::kIntention: return intention;
    case Category::kMoralAction: return moral_action;
    case Category::kMoralConsequence: return moral_consequence;
    case Category::kImmoralAction: return immoral_action;
    case Category::kImmoralConsequence: return immoral_consequence;
  }
  return norm;
}

std::string& Story::field(Category c) {
  return const_cast<std::string&>(std::as_const(*this).field(c));
}

std::vector<Violation> ValidateStory(const Story& story) {
  std::vector<Violation> out;
  if (text::Trim(story.id).empty()) out.push_back({"id", "non-empty"});
  for (Category c : kAllCategories) {
    if (text::Trim(story.field(c)).empty()) {
      out.push_back({std::string(CategoryName(c)), "non-empty"});
    }
  }
  return out;
}

SegmentView Segment(const Story& story, SegmentKind kind) {
  switch (kind) {
    case SegmentKind::kContext:
      return {kind, {story.norm, story.situation, story.intention}};
    case SegmentKind::kMoralPath:
      return {kind, {story.moral_action, story.moral_consequence}};
    case SegmentKind::kImmoralPath:
      return {kind, {story.immoral_action, story.immoral_consequence}};
  }
  return {kind, {}};
}

Story StoryFromJsonLine(std::string_view line, size_t line_number) {
  const std::string where = LinePrefix(line_number);
  ordered_json record;
  try {
    record = ordered_json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(where + "malformed record: " + e.what());
  }
  if (!record.is_object()) throw DataError(where + "record is not an object");

  auto get = [&](std::string_view key) -> std::string {
    auto it = record.find(std::string(key));
    // The released corpus spells the identifier key "ID".
    if (it == record.end() && key == "id") it = record.find("ID");
    if (it == record.end()) {
      throw DataError(where + "missing field '" + std::string(key) + "'");
    }
    if (!it->is_string()) {
      throw DataError(where + "field '" + std::string(key) +
                      "' is not a string");
    }
    return it->get<std::string>();
  };

  Story story;
  story.id = get("id");
  for (Category c : kAllCategories) story.field(c) = get(CategoryName(c));
  return story;
}

std::string StoryToJsonLine(const Story& story) {
  ordered_json record;
  record["id"] = story.id;
  for (Category c : kAllCategories) {
    record[std::string(CategoryName(c))] = story.field(c);
  }
  return record.dump();
}

std::vector<ParsedRecord> ReadStoryRecords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<ParsedRecord> records;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (text::Trim(line).empty()) continue;
    records.push_back({line_number, StoryFromJsonLine(line, line_number)});
  }
  if (in.bad()) throw IoError("read failure on " + path.string());
  return records;
}

std::vector<Story> LoadCorpus(const std::filesystem::path& path) {
  std::vector<Story> stories;
  std::set<std::string, std::less<>> seen;
  for (ParsedRecord& record : ReadStoryRecords(path)) {
    const auto violations = ValidateStory(record.story);
    if (!violations.empty()) {
      throw DataError(LinePrefix(record.line) + "field '" +
                      violations.front().field + "' violates rule " +
                      violations.front().rule);
    }
    if (!seen.insert(record.story.id).second) {
      throw DataError(LinePrefix(record.line) + "duplicate id '" +
                      record.story.id + "'");
    }
    stories.push_back(std::move(record.story));
  }
  return stories;
}

void SaveCorpus(const std::filesystem::path& path,
                std::span<const Story> stories) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  for (const Story& s : stories) out << StoryToJsonLine(s) << '\n';
  if (!out) throw IoError("write failure on " + path.string());
}

CorpusReport MakeCorpusReport(std::span<const Story> stories) {
  if (stories.empty()) throw DataError("corpus report of an empty corpus");
  CorpusReport report;
  report.story_count = stories.size();
  for (Category c : kAllCategories) {
    double total = 0.0;
    for (const Story& s : stories) {
      total += static_cast<double>(text::Tokenize(s.field(c)).size());
    }
    report.mean_tokens[c] = total / static_cast<double>(stories.size());
  }
  return report;
}

}  // namespace normchain
