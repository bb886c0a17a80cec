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

#include "normchain/metrics.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>

#include "normchain/error.h"
#include "normchain/text.h"

namespace normchain::metrics {
namespace {

using Tokens = std::vector<std::string>;
using NgramCounts = std::map<std::vector<std::string>, size_t>;

NgramCounts CountNgrams(const Tokens& tokens, size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[Tokens(tokens.begin() + static_cast<long>(i),
                    tokens.begin() + static_cast<long>(i + n))];
  }
  return counts;
}

Tokens LowerTokens(std::string_view s) {
  return text::Tokenize(text::AsciiLower(s));
}

size_t Lcs(const Tokens& a, const Tokens& b) {
  std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

double CorpusBleu(std::span<const EvalPair> pairs) {
  constexpr size_t kMaxOrder = 4;
  if (pairs.empty()) throw ConfigError("BLEU needs at least one hypothesis");
  std::array<size_t, kMaxOrder> matched{};
  std::array<size_t, kMaxOrder> total{};
  size_t hyp_len = 0;
  size_t ref_len = 0;
  for (const EvalPair& pair : pairs) {
    if (pair.references.empty()) {
      throw ConfigError("BLEU pair without references");
    }
    const Tokens hyp = text::Tokenize(pair.hypothesis);
    std::vector<Tokens> refs;
    for (const std::string& r : pair.references) {
      refs.push_back(text::Tokenize(r));
    }
    hyp_len += hyp.size();
    // Closest reference length, shorter on ties.
    size_t best = refs.front().size();
    for (const Tokens& r : refs) {
      const auto diff = [&](size_t len) {
        return len > hyp.size() ? len - hyp.size() : hyp.size() - len;
      };
      if (diff(r.size()) < diff(best) ||
          (diff(r.size()) == diff(best) && r.size() < best)) {
        best = r.size();
      }
    }
    ref_len += best;

    for (size_t n = 1; n <= kMaxOrder; ++n) {
      const NgramCounts hyp_counts = CountNgrams(hyp, n);
      NgramCounts max_ref;
      for (const Tokens& r : refs) {
        for (const auto& [gram, c] : CountNgrams(r, n)) {
          max_ref[gram] = std::max(max_ref[gram], c);
        }
      }
      for (const auto& [gram, c] : hyp_counts) {
        auto it = max_ref.find(gram);
        if (it != max_ref.end()) matched[n - 1] += std::min(c, it->second);
        total[n - 1] += c;
      }
    }
  }
  double log_sum = 0.0;
  for (size_t n = 0; n < kMaxOrder; ++n) {
    if (matched[n] == 0 || total[n] == 0) return 0.0;
    log_sum += std::log(static_cast<double>(matched[n]) /
                        static_cast<double>(total[n]));
  }
  const double c = static_cast<double>(hyp_len);
  const double r = static_cast<double>(ref_len);
  const double bp = c < r ? std::exp(1.0 - r / c) : 1.0;
  return 100.0 * bp * std::exp(log_sum / kMaxOrder);
}

double RougeL(const EvalPair& pair, double beta) {
  const Tokens hyp = LowerTokens(pair.hypothesis);
  double best = 0.0;
  for (const std::string& ref_text : pair.references) {
    const Tokens ref = LowerTokens(ref_text);
    if (hyp.empty() || ref.empty()) continue;
    const double lcs = static_cast<double>(Lcs(hyp, ref));
    if (lcs == 0.0) continue;
    const double p = lcs / static_cast<double>(hyp.size());
    const double r = lcs / static_cast<double>(ref.size());
    const double b2 = beta * beta;
    best = std::max(best, (1.0 + b2) * p * r / (r + b2 * p));
  }
  return best;
}

double MeanRougeL(std::span<const EvalPair> pairs) {
  if (pairs.empty()) throw ConfigError("ROUGE-L needs at least one pair");
  double sum = 0.0;
  for (const EvalPair& p : pairs) sum += RougeL(p);
  return sum / static_cast<double>(pairs.size());
}

double JointNgramDiversity(std::span<const std::string> outputs) {
  std::set<Tokens> distinct;
  size_t total = 0;
  for (const std::string& out : outputs) {
    const Tokens tokens = LowerTokens(out);
    for (size_t n = 1; n <= 4; ++n) {
      for (const auto& [gram, c] : CountNgrams(tokens, n)) {
        distinct.insert(gram);
        total += c;
      }
    }
  }
  if (total == 0) throw ConfigError("diversity of outputs with no tokens");
  return static_cast<double>(distinct.size()) / static_cast<double>(total);
}

double KrippendorffAlpha(const RatingMatrix& ratings) {
  // Coincidence matrix o[c][k] over pairable values.
  std::map<std::string, std::map<std::string, double>> o;
  bool pairable = false;
  for (const auto& item : ratings) {
    std::vector<std::string> values;
    for (const auto& v : item) {
      if (v) values.push_back(*v);
    }
    const size_t m = values.size();
    if (m < 2) continue;
    pairable = true;
    for (size_t i = 0; i < m; ++i) {
      for (size_t j = 0; j < m; ++j) {
        if (i == j) continue;
        o[values[i]][values[j]] += 1.0 / static_cast<double>(m - 1);
      }
    }
  }
  if (!pairable) {
    throw ConfigError("Krippendorff's alpha needs an item with two ratings");
  }
  std::map<std::string, double> marginal;
  double n = 0.0;
  double disagree = 0.0;
  for (const auto& [c, row] : o) {
    for (const auto& [k, count] : row) {
      marginal[c] += count;
      n += count;
      if (c != k) disagree += count;
    }
  }
  if (disagree == 0.0) return 1.0;
  double expected = 0.0;
  for (const auto& [c, nc] : marginal) {
    for (const auto& [k, nk] : marginal) {
      if (c != k) expected += nc * nk;
    }
  }
  return 1.0 - (n - 1.0) * disagree / expected;
}

ClassificationScores EvaluateClassification(
    std::span<const std::string> predictions, std::span<const std::string> gold,
    const std::string& positive_label) {
  if (predictions.size() != gold.size()) {
    throw ConfigError("prediction and gold lists differ in length");
  }
  if (predictions.empty()) throw ConfigError("no predictions to evaluate");
  std::set<std::string_view> labels(gold.begin(), gold.end());
  labels.insert(predictions.begin(), predictions.end());
  if (labels.size() > 2) {
    throw ConfigError("expected binary labels, found " +
                      std::to_string(labels.size()) + " distinct values");
  }
  size_t correct = 0, tp = 0, fp = 0, fn = 0;
  for (size_t i = 0; i < gold.size(); ++i) {
    const bool pred_pos = predictions[i] == positive_label;
    const bool gold_pos = gold[i] == positive_label;
    if (predictions[i] == gold[i]) ++correct;
    if (pred_pos && gold_pos) ++tp;
    if (pred_pos && !gold_pos) ++fp;
    if (!pred_pos && gold_pos) ++fn;
  }
  ClassificationScores s;
  s.accuracy = static_cast<double>(correct) / static_cast<double>(gold.size());
  const double precision =
      tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
  const double recall =
      tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  s.f1 = precision + recall == 0.0
             ? 0.0
             : 2.0 * precision * recall / (precision + recall);
  return s;
}

}  // namespace normchain::metrics
