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

#ifndef NORMCHAIN_METRICS_H_
#define NORMCHAIN_METRICS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace normchain::metrics {

struct EvalPair {
  std::string hypothesis;
  std::vector<std::string> references;  // at least one
};

// Corpus-level BLEU-4 in [0, 100]: clipped n-gram precisions for n = 1..4
// summed over the corpus, geometric mean, brevity penalty exp(1 - r/c) when
// c < r with r the sum of closest reference lengths (shorter on ties).
// Whitespace tokens, case-sensitive, no smoothing: any order with zero
// matches yields 0. Throws ConfigError on an empty pair list or a pair
// without references.
double CorpusBleu(std::span<const EvalPair> pairs);

// ROUGE-L F-measure with beta = 1.2 over lowercased whitespace tokens,
// maximized over references. 0 when either side is empty.
double RougeL(const EvalPair& pair, double beta = 1.2);

// Mean RougeL over a list of pairs.
double MeanRougeL(std::span<const EvalPair> pairs);

// Distinct / total over all 1- to 4-grams pooled across outputs (lowercased
// whitespace tokens). Throws ConfigError if there are no n-grams at all.
double JointNgramDiversity(std::span<const std::string> outputs);

// items x raters, nullopt = missing. Values are nominal.
using RatingMatrix = std::vector<std::vector<std::optional<std::string>>>;

// Nominal Krippendorff's alpha from the coincidence matrix. Items with a
// single rating are not pairable and are ignored. Returns 1 when observed
// disagreement is zero. Throws ConfigError when no item has two ratings.
double KrippendorffAlpha(const RatingMatrix& ratings);

struct ClassificationScores {
  double accuracy = 0.0;
  double f1 = 0.0;
};

// Accuracy and positive-class F1 (0 when precision + recall is 0). Throws
// ConfigError on empty input, a length mismatch or more than two labels.
ClassificationScores EvaluateClassification(
    std::span<const std::string> predictions, std::span<const std::string> gold,
    const std::string& positive_label);

}  // namespace normchain::metrics

#endif  // NORMCHAIN_METRICS_H_
