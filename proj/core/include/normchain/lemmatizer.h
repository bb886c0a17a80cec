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

#ifndef NORMCHAIN_LEMMATIZER_H_
#define NORMCHAIN_LEMMATIZER_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace normchain {

// Maps surface tokens to lemmas for lexical-bias analysis.
class Lemmatizer {
 public:
  virtual ~Lemmatizer() = default;

  // Lemma of a single whitespace token. May return an empty string for
  // tokens that carry no lexical content (pure punctuation).
  virtual std::string Lemma(std::string_view token) const = 0;

  // Whitespace-tokenizes text and lemmatizes every token, dropping empties.
  std::vector<std::string> Lemmas(std::string_view text) const;
};

// Lowercases, strips surrounding punctuation and removes common English
// inflectional suffixes (-ing, -ed, -s and friends). Crude compared to a
// tagger-driven lemmatizer but deterministic and dependency free.
class RuleLemmatizer : public Lemmatizer {
 public:
  std::string Lemma(std::string_view token) const override;
};

// Exact lookup table (lowercased, punctuation-stripped word -> lemma) with
// rule-based fallback. Lets externally produced lemma lists be plugged in.
class TableLemmatizer : public Lemmatizer {
 public:
  explicit TableLemmatizer(std::map<std::string, std::string, std::less<>> table);

  // Reads "word<TAB>lemma" lines.
  static TableLemmatizer FromTsv(const std::filesystem::path& path);

  std::string Lemma(std::string_view token) const override;

 private:
  std::map<std::string, std::string, std::less<>> table_;
  RuleLemmatizer fallback_;
};

// Lowercase and strip leading/trailing non-alphanumeric ASCII characters.
std::string NormalizeToken(std::string_view token);

}  // namespace normchain

#endif  // NORMCHAIN_LEMMATIZER_H_
