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

#ifndef NORMCHAIN_SPLITTING_H_
#define NORMCHAIN_SPLITTING_H_

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "normchain/clustering.h"
#include "normchain/corpus.h"
#include "normchain/lemmatizer.h"
#include "normchain/providers.h"

namespace normchain {

enum class Partition { kTrain, kDev, kTest };
inline constexpr std::array<Partition, 3> kAllPartitions = {
    Partition::kTrain, Partition::kDev, Partition::kTest};
std::string_view PartitionName(Partition p);

enum class SplitStrategy { kNormDistance, kLexicalBias, kMinimalPairs };
std::string_view StrategyCode(SplitStrategy s);  // "nd", "lb", "mp"
std::optional<SplitStrategy> ParseStrategyCode(std::string_view code);

// Which pair of story texts a lexical-bias or minimal-pair split looks at.
enum class TargetField { kActions, kConsequences };
std::string_view TargetFieldName(TargetField f);
std::optional<TargetField> ParseTargetField(std::string_view name);
// Moral and immoral text of the chosen field.
const std::string& TargetText(const Story& s, TargetField f, Orientation o);

// train:dev:test ratio. Zero parts are allowed; the sum must be positive.
struct SplitRatios {
  unsigned train = 10;
  unsigned dev = 1;
  unsigned test = 1;

  // Parses "a:b:c". Throws ConfigError.
  static SplitRatios Parse(std::string_view text);
  std::string ToString() const;

  // Story quotas for a corpus of size n: test = floor(n*test/sum),
  // dev = floor(n*dev/sum), train takes the remainder.
  size_t TestQuota(size_t n) const;
  size_t DevQuota(size_t n) const;
};

struct SplitAssignment {
  SplitStrategy strategy = SplitStrategy::kMinimalPairs;
  TargetField target_field = TargetField::kActions;
  SplitRatios ratios;
  std::map<std::string, Partition> partition;

  std::vector<std::string> Members(Partition p) const;
  size_t Count(Partition p) const;
};

// Per-story value of the strategy's metric (DoI, BS or normalized DL).
using StoryMetrics = std::map<std::string, double>;

struct SplitOutcome {
  SplitAssignment assignment;
  StoryMetrics metrics;
};

struct SplitReport {
  SplitStrategy strategy = SplitStrategy::kMinimalPairs;
  std::map<Partition, double> mean;

  // Expected direction: DoI rises towards test, BS and DL fall.
  bool IsMonotone() const;
};

// --- Norm distance -------------------------------------------------------

// Embeds every story's norm. Distinct norm texts are embedded once, in
// sorted order and in batches that may run on several workers, so identical
// norms always share a vector. Provider failures are rethrown as
// ProviderError naming a story id of the failing batch.
std::map<std::string, EmbeddingVector> EmbedNorms(
    std::span<const Story> stories, Embedder& embedder, size_t workers = 1,
    size_t batch_size = 64);

// Clusters norm embeddings into k clusters and assigns whole clusters, most
// isolated first (ties by cluster id), to test until its quota is reached,
// then to dev, remainder to train. Metrics hold each story's cluster DoI.
SplitOutcome SplitByNormDistance(
    const std::map<std::string, EmbeddingVector>& embeddings, size_t k,
    const SplitRatios& ratios);

SplitOutcome SplitByNormDistance(std::span<const Story> stories,
                                 Embedder& embedder, size_t k,
                                 const SplitRatios& ratios, size_t workers = 1);

// --- Lexical bias --------------------------------------------------------

struct LemmaBias {
  std::string lemma;
  size_t moral_count = 0;
  size_t immoral_count = 0;
  size_t skew = 0;

  bool operator==(const LemmaBias&) const = default;
};

struct LemmaBiasTable {
  TargetField target_field = TargetField::kActions;
  std::vector<LemmaBias> entries;

  bool Contains(std::string_view lemma) const;
};

// Counts lemma occurrences in moral vs immoral target texts and keeps the k
// lemmas with the largest |moral - immoral| (ties: larger total count, then
// lexicographic). Lemmas with zero skew are never included.
LemmaBiasTable BuildLemmaBiasTable(std::span<const Story> stories,
                                   const Lemmatizer& lemmatizer,
                                   TargetField field, size_t k = 100);

// Occurrences of table lemmas across both target texts of a story.
size_t BiasScore(const Story& story, const LemmaBiasTable& table,
                 const Lemmatizer& lemmatizer);

// Lowest bias scores go to test, then dev, rest train (ties by story id).
SplitOutcome SplitByLexicalBias(std::span<const Story> stories,
                                const Lemmatizer& lemmatizer,
                                TargetField field, size_t k,
                                const SplitRatios& ratios, size_t workers = 1);

// --- Minimal pairs -------------------------------------------------------

// Normalized edit distance between the moral and immoral target texts.
double PairDistance(const Story& story, TargetField field);

// Smallest pair distances go to test, then dev, rest train (ties by id).
SplitOutcome SplitByMinimalPairs(std::span<const Story> stories,
                                 TargetField field, const SplitRatios& ratios,
                                 size_t workers = 1);

// --- Audit ---------------------------------------------------------------

// Mean metric per partition. Throws DataError if a partition is empty or a
// story lacks a metric value.
SplitReport MakeSplitReport(const SplitAssignment& assignment,
                            const StoryMetrics& metrics);

}  // namespace normchain

#endif  // NORMCHAIN_SPLITTING_H_
