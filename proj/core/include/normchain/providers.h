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

#ifndef NORMCHAIN_PROVIDERS_H_
#define NORMCHAIN_PROVIDERS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace normchain {

// Sampling parameters for a generator call. Defaults are ten samples under
// nucleus sampling with p = 0.9.
struct DecodeParams {
  int n = 10;
  double top_p = 0.9;
  int max_new_tokens = 64;
  uint64_t seed = 0;

  // Throws ConfigError if any field is out of range.
  void Validate() const;

  bool operator==(const DecodeParams&) const = default;
};

struct Candidate {
  std::string text;
  int gen_index = 0;
  std::optional<double> score;  // filled by ranking

  bool operator==(const Candidate&) const = default;
};

// Posterior over a fixed label set.
struct ClassDistribution {
  std::map<std::string, double> probs;

  double prob(std::string_view label) const;

  // Throws ProviderError unless the labels equal `expected` and the
  // probabilities are finite, in [0, 1] and sum to 1 within 1e-6.
  void Validate(std::span<const std::string> expected) const;
};

using EmbeddingVector = std::vector<double>;

// Expert roles. One entry per component model a chain can use.
enum class Role {
  kActionGenContext,
  kActionClsContext,
  kConseqGenContextAction,
  kConseqClsContextAction,
  kActionGenContextConseq,
  kActionClsContextConseq,
  kConseqRefiner,
  kNormGenFull,
  kJudge,
  kEmbedder,
};

enum class RoleKind { kGenerator, kClassifier, kEmbedder };

std::string_view RoleName(Role role);
std::optional<Role> ParseRole(std::string_view name);
RoleKind KindOf(Role role);

// Label set a classifier role is queried with: {moral, immoral} for action
// classifiers, {plausible, implausible} for consequence classifiers.
const std::vector<std::string>& LabelsFor(Role role);

inline constexpr std::string_view kMoralLabel = "moral";
inline constexpr std::string_view kImmoralLabel = "immoral";
inline constexpr std::string_view kPlausibleLabel = "plausible";
inline constexpr std::string_view kImplausibleLabel = "implausible";

class Generator {
 public:
  virtual ~Generator() = default;
  // Returns exactly params.n candidates with gen_index 0..n-1. Throws
  // ProviderError on failure.
  virtual std::vector<Candidate> Generate(std::string_view prompt,
                                          const DecodeParams& params) = 0;
};

class Classifier {
 public:
  virtual ~Classifier() = default;
  // Throws ProviderError on failure or a malformed distribution.
  virtual ClassDistribution Classify(std::string_view input_text,
                                     std::span<const std::string> labels) = 0;
};

class Embedder {
 public:
  virtual ~Embedder() = default;
  // One vector per text, all of the same dimension. Throws ProviderError.
  virtual std::vector<EmbeddingVector> Embed(
      std::span<const std::string> texts) = 0;
};

// Enforces the generate contract on a backend response: exactly n
// candidates, re-indexed 0..n-1.
std::vector<Candidate> CheckCandidates(std::vector<Candidate> candidates,
                                       int n);

// Enforces the embed contract: one vector per text, uniform dimension,
// finite values.
void CheckEmbeddings(const std::vector<EmbeddingVector>& vectors,
                     size_t expected_count);

}  // namespace normchain

#endif  // NORMCHAIN_PROVIDERS_H_
