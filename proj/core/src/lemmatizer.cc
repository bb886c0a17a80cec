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

#include "normchain/lemmatizer.h"

#include <fstream>

#include "normchain/error.h"
#include "normchain/text.h"

namespace normchain {
namespace {

bool IsAlnum(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c >= 0x80;
}

bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

// "stopp" -> "stop", but keep "add", "ill", "pass".
std::string Undouble(std::string stem) {
  const size_t n = stem.size();
  if (n >= 3 && stem[n - 1] == stem[n - 2] && !IsVowel(stem[n - 1]) &&
      stem[n - 1] != 'l' && stem[n - 1] != 's' && stem[n - 1] != 'z' &&
      stem[n - 1] != 'f') {
    stem.pop_back();
  }
  return stem;
}

// Restores a silent 'e' dropped before -ed/-ing ("donat" -> "donate").
std::string RestoreE(std::string stem) {
  for (std::string_view tail : {"at", "iz", "bl", "v", "nc", "rc", "ac",
                                "us", "ur", "ag", "dg"}) {
    if (EndsWith(stem, tail)) return stem + "e";
  }
  return stem;
}

bool IsConsonantAt(std::string_view s, size_t i) {
  if (IsVowel(s[i])) return false;
  if (s[i] == 'y') return i == 0 || !IsConsonantAt(s, i - 1);
  return true;
}

// Number of vowel-consonant sequences, as in Porter's stemmer.
int Measure(std::string_view s) {
  int m = 0;
  for (size_t i = 1; i < s.size(); ++i) {
    if (IsConsonantAt(s, i) && !IsConsonantAt(s, i - 1)) ++m;
  }
  return m;
}

// Short consonant-vowel-consonant stem ("shar", "hop"): the suffix ate an e.
bool NeedsE(std::string_view s) {
  const size_t n = s.size();
  if (n < 3 || Measure(s) != 1) return false;
  const char last = s[n - 1];
  return IsConsonantAt(s, n - 1) && !IsConsonantAt(s, n - 2) &&
         IsConsonantAt(s, n - 3) && last != 'w' && last != 'x' && last != 'y';
}

// Strips an -ed/-ing stem back to a lemma.
std::string FinishStem(std::string stem) {
  const std::string undoubled = Undouble(stem);
  if (undoubled.size() != stem.size()) return undoubled;
  if (NeedsE(stem)) return stem + "e";
  return RestoreE(std::move(stem));
}

bool HasVowel(std::string_view s) {
  for (char c : s) {
    if (IsVowel(c) || c == 'y') return true;
  }
  return false;
}

}  // namespace

std::vector<std::string> Lemmatizer::Lemmas(std::string_view input) const {
  std::vector<std::string> out;
  for (const std::string& token : text::Tokenize(input)) {
    std::string lemma = Lemma(token);
    if (!lemma.empty()) out.push_back(std::move(lemma));
  }
  return out;
}

std::string NormalizeToken(std::string_view token) {
  size_t begin = 0;
  size_t end = token.size();
  while (begin < end && !IsAlnum(static_cast<unsigned char>(token[begin]))) {
    ++begin;
  }
  while (end > begin && !IsAlnum(static_cast<unsigned char>(token[end - 1]))) {
    --end;
  }
  return text::AsciiLower(token.substr(begin, end - begin));
}

std::string RuleLemmatizer::Lemma(std::string_view token) const {
  std::string w = NormalizeToken(token);
  // Possessive.
  if (EndsWith(w, "'s")) w.resize(w.size() - 2);
  if (w.size() <= 3) return w;

  if (EndsWith(w, "ies") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  if (EndsWith(w, "ied") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  if (EndsWith(w, "ing") && w.size() > 5) {
    std::string stem = w.substr(0, w.size() - 3);
    if (HasVowel(stem)) return FinishStem(std::move(stem));
  }
  if (EndsWith(w, "ed") && w.size() > 4) {
    std::string stem = w.substr(0, w.size() - 2);
    if (HasVowel(stem)) return FinishStem(std::move(stem));
  }
  if (EndsWith(w, "sses") || EndsWith(w, "shes") || EndsWith(w, "ches") ||
      EndsWith(w, "xes")) {
    return w.substr(0, w.size() - 2);
  }
  if (EndsWith(w, "s") && !EndsWith(w, "ss") && !EndsWith(w, "us") &&
      !EndsWith(w, "is")) {
    return w.substr(0, w.size() - 1);
  }
  return w;
}

TableLemmatizer::TableLemmatizer(
    std::map<std::string, std::string, std::less<>> table)
    : table_(std::move(table)) {}

TableLemmatizer TableLemmatizer::FromTsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lemma table " + path.string());
  std::map<std::string, std::string, std::less<>> table;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (text::Trim(line).empty()) continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError("lemma table line " + std::to_string(line_number) +
                      ": expected word<TAB>lemma");
    }
    table[NormalizeToken(line.substr(0, tab))] =
        std::string(text::Trim(line.substr(tab + 1)));
  }
  return TableLemmatizer(std::move(table));
}

std::string TableLemmatizer::Lemma(std::string_view token) const {
  const std::string key = NormalizeToken(token);
  if (auto it = table_.find(key); it != table_.end()) return it->second;
  return fallback_.Lemma(token);
}

}  // namespace normchain
