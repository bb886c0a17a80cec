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

#include "normchain/splitting.h"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <unordered_map>

#include "normchain/edit_distance.h"
#include "normchain/error.h"
#include "normchain/parallel.h"
#include "normchain/text.h"

namespace normchain {
namespace {

struct Ranked {
  double key;
  std::string id;
};

// Sorts ascending by key (ties by id) and fills test, dev, then train.
SplitAssignment AssignByRank(std::vector<Ranked> ranked,
                             const SplitRatios& ratios) {
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    return a.key != b.key ? a.key < b.key : a.id < b.id;
  });
  const size_t test_quota = ratios.TestQuota(ranked.size());
  const size_t dev_quota = ratios.DevQuota(ranked.size());
  SplitAssignment out;
  out.ratios = ratios;
  for (size_t i = 0; i < ranked.size(); ++i) {
    Partition p = Partition::kTrain;
    if (i < test_quota) {
      p = Partition::kTest;
    } else if (i < test_quota + dev_quota) {
      p = Partition::kDev;
    }
    out.partition.emplace(ranked[i].id, p);
  }
  return out;
}

void CheckUniqueIds(std::span<const Story> stories) {
  std::set<std::string_view> seen;
  for (const Story& s : stories) {
    if (!seen.insert(s.id).second) {
      throw DataError("duplicate story id '" + s.id + "'");
    }
  }
}

}  // namespace

std::string_view PartitionName(Partition p) {
  switch (p) {
    case Partition::kTrain: return "train";
    case Partition::kDev: return "dev";
    case Partition::kTest: return "test";
  }
  return "train";
}

std::string_view StrategyCode(SplitStrategy s) {
  switch (s) {
    case SplitStrategy::kNormDistance: return "nd";
    case SplitStrategy::kLexicalBias: return "lb";
    case SplitStrategy::kMinimalPairs: return "mp";
  }
  return "mp";
}

std::optional<SplitStrategy> ParseStrategyCode(std::string_view code) {
  if (code == "nd") return SplitStrategy::kNormDistance;
  if (code == "lb") return SplitStrategy::kLexicalBias;
  if (code == "mp") return SplitStrategy::kMinimalPairs;
  return std::nullopt;
}

std::string_view TargetFieldName(TargetField f) {
  return f == TargetField::kActions ? "actions" : "consequences";
}

std::optional<TargetField> ParseTargetField(std::string_view name) {
  if (name == "actions") return TargetField::kActions;
  if (name == "consequences") return TargetField::kConsequences;
  return std::nullopt;
}

const std::string& TargetText(const Story& s, TargetField f, Orientation o) {
  return f == TargetField::kActions ? s.action(o) : s.consequence(o);
}

SplitRatios SplitRatios::Parse(std::string_view input) {
  std::array<unsigned, 3> parts{};
  size_t pos = 0;
  for (size_t i = 0; i < 3; ++i) {
    const size_t end = i < 2 ? input.find(':', pos) : input.size();
    if (end == std::string_view::npos) {
      throw ConfigError("ratios must look like a:b:c, got '" +
                        std::string(input) + "'");
    }
    const std::string_view piece = input.substr(pos, end - pos);
    auto [ptr, ec] =
        std::from_chars(piece.data(), piece.data() + piece.size(), parts[i]);
    if (ec != std::errc() || ptr != piece.data() + piece.size() ||
        piece.empty()) {
      throw ConfigError("bad ratio component '" + std::string(piece) + "'");
    }
    pos = end + 1;
  }
  SplitRatios r{parts[0], parts[1], parts[2]};
  if (r.train + r.dev + r.test == 0) {
    throw ConfigError("ratios must not all be zero");
  }
  return r;
}

std::string SplitRatios::ToString() const {
  return std::to_string(train) + ":" + std::to_string(dev) + ":" +
         std::to_string(test);
}

size_t SplitRatios::TestQuota(size_t n) const {
  return n * test / (train + dev + test);
}

size_t SplitRatios::DevQuota(size_t n) const {
  return n * dev / (train + dev + test);
}

std::vector<std::string> SplitAssignment::Members(Partition p) const {
  std::vector<std::string> out;
  for (const auto& [id, part] : partition) {
    if (part == p) out.push_back(id);
  }
  return out;
}

size_t SplitAssignment::Count(Partition p) const {
  return static_cast<size_t>(
      std::count_if(partition.begin(), partition.end(),
                    [p](const auto& kv) { return kv.second == p; }));
}

bool SplitReport::IsMonotone() const {
  const double train = mean.at(Partition::kTrain);
  const double dev = mean.at(Partition::kDev);
  const double test = mean.at(Partition::kTest);
  if (strategy == SplitStrategy::kNormDistance) {
    return test >= dev && dev >= train;
  }
  return test <= dev && dev <= train;
}

std::map<std::string, EmbeddingVector> EmbedNorms(
    std::span<const Story> stories, Embedder& embedder, size_t workers,
    size_t batch_size) {
  std::map<std::string, EmbeddingVector> out;
  if (stories.empty()) return out;
  batch_size = std::max<size_t>(1, batch_size);

  // Distinct norm texts in sorted order, with one owning story id each for
  // error messages.
  std::map<std::string, std::string> first_owner;
  for (const Story& s : stories) first_owner.emplace(s.norm, s.id);
  std::vector<std::string> texts;
  std::vector<std::string> owners;
  for (const auto& [norm, id] : first_owner) {
    texts.push_back(norm);
    owners.push_back(id);
  }

  const size_t batches = (texts.size() + batch_size - 1) / batch_size;
  std::vector<std::vector<EmbeddingVector>> results(batches);
  ParallelFor(batches, workers, [&](size_t b) {
    const size_t begin = b * batch_size;
    const size_t end = std::min(texts.size(), begin + batch_size);
    std::span<const std::string> chunk(texts.data() + begin, end - begin);
    try {
      results[b] = embedder.Embed(chunk);
      CheckEmbeddings(results[b], chunk.size());
    } catch (const ProviderError& e) {
      throw ProviderError("embedding norm of story '" + owners[begin] +
                          "': " + e.what());
    }
  });

  std::unordered_map<std::string, const EmbeddingVector*> by_text;
  size_t dim = 0;
  for (size_t b = 0; b < batches; ++b) {
    for (size_t i = 0; i < results[b].size(); ++i) {
      const EmbeddingVector& v = results[b][i];
      if (dim == 0) dim = v.size();
      if (v.size() != dim) {
        throw ProviderError("embedding dimension mismatch for story '" +
                            owners[b * batch_size + i] + "'");
      }
      by_text[texts[b * batch_size + i]] = &v;
    }
  }
  for (const Story& s : stories) out[s.id] = *by_text.at(s.norm);
  return out;
}

SplitOutcome SplitByNormDistance(
    const std::map<std::string, EmbeddingVector>& embeddings, size_t k,
    const SplitRatios& ratios) {
  std::vector<Cluster> clusters = AgglomerativeCluster(embeddings, k);
  std::stable_sort(clusters.begin(), clusters.end(),
                   [](const Cluster& a, const Cluster& b) {
                     return a.doi != b.doi ? a.doi > b.doi : a.id < b.id;
                   });

  const size_t n = embeddings.size();
  const size_t test_quota = ratios.TestQuota(n);
  const size_t dev_quota = ratios.DevQuota(n);
  SplitOutcome out;
  out.assignment.strategy = SplitStrategy::kNormDistance;
  out.assignment.ratios = ratios;
  size_t test_count = 0;
  size_t dev_count = 0;
  for (const Cluster& c : clusters) {
    Partition p = Partition::kTrain;
    if (test_count < test_quota) {
      p = Partition::kTest;
      test_count += c.member_ids.size();
    } else if (dev_count < dev_quota) {
      p = Partition::kDev;
      dev_count += c.member_ids.size();
    }
    for (const std::string& id : c.member_ids) {
      out.assignment.partition.emplace(id, p);
      out.metrics.emplace(id, c.doi);
    }
  }
  return out;
}

SplitOutcome SplitByNormDistance(std::span<const Story> stories,
                                 Embedder& embedder, size_t k,
                                 const SplitRatios& ratios, size_t workers) {
  CheckUniqueIds(stories);
  if (k > stories.size()) {
    throw ConfigError("cluster count k = " + std::to_string(k) +
                      " exceeds story count " + std::to_string(stories.size()));
  }
  return SplitByNormDistance(EmbedNorms(stories, embedder, workers), k, ratios);
}

bool LemmaBiasTable::Contains(std::string_view lemma) const {
  return std::any_of(entries.begin(), entries.end(),
                     [&](const LemmaBias& e) { return e.lemma == lemma; });
}

LemmaBiasTable BuildLemmaBiasTable(std::span<const Story> stories,
                                   const Lemmatizer& lemmatizer,
                                   TargetField field, size_t k) {
  std::map<std::string, std::pair<size_t, size_t>> counts;
  for (const Story& s : stories) {
    for (const std::string& l :
         lemmatizer.Lemmas(TargetText(s, field, Orientation::kMoral))) {
      ++counts[l].first;
    }
    for (const std::string& l :
         lemmatizer.Lemmas(TargetText(s, field, Orientation::kImmoral))) {
      ++counts[l].second;
    }
  }
  LemmaBiasTable table;
  table.target_field = field;
  for (const auto& [lemma, c] : counts) {
    const size_t skew = c.first > c.second ? c.first - c.second
                                           : c.second - c.first;
    if (skew == 0) continue;
    table.entries.push_back({lemma, c.first, c.second, skew});
  }
  std::sort(table.entries.begin(), table.entries.end(),
            [](const LemmaBias& a, const LemmaBias& b) {
              if (a.skew != b.skew) return a.skew > b.skew;
              const size_t ta = a.moral_count + a.immoral_count;
              const size_t tb = b.moral_count + b.immoral_count;
              if (ta != tb) return ta > tb;
              return a.lemma < b.lemma;
            });
  if (table.entries.size() > k) table.entries.resize(k);
  return table;
}

size_t BiasScore(const Story& story, const LemmaBiasTable& table,
                 const Lemmatizer& lemmatizer) {
  std::set<std::string, std::less<>> lemmas;
  for (const LemmaBias& e : table.entries) lemmas.insert(e.lemma);
  size_t score = 0;
  for (Orientation o : {Orientation::kMoral, Orientation::kImmoral}) {
    for (const std::string& l :
         lemmatizer.Lemmas(TargetText(story, table.target_field, o))) {
      score += lemmas.count(l);
    }
  }
  return score;
}

SplitOutcome SplitByLexicalBias(std::span<const Story> stories,
                                const Lemmatizer& lemmatizer,
                                TargetField field, size_t k,
                                const SplitRatios& ratios, size_t workers) {
  CheckUniqueIds(stories);
  const LemmaBiasTable table =
      BuildLemmaBiasTable(stories, lemmatizer, field, k);
  std::vector<Ranked> ranked(stories.size());
  ParallelFor(stories.size(), workers, [&](size_t i) {
    ranked[i] = {static_cast<double>(BiasScore(stories[i], table, lemmatizer)),
                 stories[i].id};
  });
  SplitOutcome out;
  for (const Ranked& r : ranked) out.metrics.emplace(r.id, r.key);
  out.assignment = AssignByRank(std::move(ranked), ratios);
  out.assignment.strategy = SplitStrategy::kLexicalBias;
  out.assignment.target_field = field;
  return out;
}

double PairDistance(const Story& story, TargetField field) {
  return NormalizedDamerauLevenshtein(
      TargetText(story, field, Orientation::kMoral),
      TargetText(story, field, Orientation::kImmoral));
}

SplitOutcome SplitByMinimalPairs(std::span<const Story> stories,
                                 TargetField field, const SplitRatios& ratios,
                                 size_t workers) {
  CheckUniqueIds(stories);
  std::vector<Ranked> ranked(stories.size());
  ParallelFor(stories.size(), workers, [&](size_t i) {
    ranked[i] = {PairDistance(stories[i], field), stories[i].id};
  });
  SplitOutcome out;
  for (const Ranked& r : ranked) out.metrics.emplace(r.id, r.key);
  out.assignment = AssignByRank(std::move(ranked), ratios);
  out.assignment.strategy = SplitStrategy::kMinimalPairs;
  out.assignment.target_field = field;
  return out;
}

SplitReport MakeSplitReport(const SplitAssignment& assignment,
                            const StoryMetrics& metrics) {
  std::map<Partition, std::pair<double, size_t>> sums;
  for (const auto& [id, p] : assignment.partition) {
    auto it = metrics.find(id);
    if (it == metrics.end()) {
      throw DataError("no metric value for story '" + id + "'");
    }
    sums[p].first += it->second;
    ++sums[p].second;
  }
  SplitReport report;
  report.strategy = assignment.strategy;
  for (Partition p : kAllPartitions) {
    auto it = sums.find(p);
    if (it == sums.end() || it->second.second == 0) {
      throw DataError("partition '" + std::string(PartitionName(p)) +
                      "' is empty; its mean is undefined");
    }
    report.mean[p] = it->second.first / static_cast<double>(it->second.second);
  }
  return report;
}

}  // namespace normchain
