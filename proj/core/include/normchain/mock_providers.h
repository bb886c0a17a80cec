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

#ifndef NORMCHAIN_MOCK_PROVIDERS_H_
#define NORMCHAIN_MOCK_PROVIDERS_H_

#include <atomic>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "normchain/providers.h"

// Deterministic in-process providers. Every mock is a pure function of its
// input and seed, so pipelines built on them are exactly reproducible.
namespace normchain::mock {

// Returns the prompt verbatim as every candidate.
class EchoGenerator : public Generator {
 public:
  std::vector<Candidate> Generate(std::string_view prompt,
                                  const DecodeParams& params) override;
};

// Bag of hashed character n-grams. Each n-gram of the raw bytes (or the
// whole text when shorter than n) adds 1.0 to bucket
// Mix64(Fnv1a64(gram) ^ seed) % dim. The empty string maps to all zeros.
class HashedNgramEmbedder : public Embedder {
 public:
  explicit HashedNgramEmbedder(size_t dim = 256, size_t n = 3,
                               uint64_t seed = 0);
  std::vector<EmbeddingVector> Embed(
      std::span<const std::string> texts) override;

  EmbeddingVector EmbedOne(std::string_view text) const;

 private:
  size_t dim_;
  size_t n_;
  uint64_t seed_;
};

// Looks texts up in a fixed table; unknown text is a provider error.
class TableEmbedder : public Embedder {
 public:
  explicit TableEmbedder(std::map<std::string, EmbeddingVector> table);
  std::vector<EmbeddingVector> Embed(
      std::span<const std::string> texts) override;

 private:
  std::map<std::string, EmbeddingVector> table_;
};

// Scores the classification target (the text between the two <SEP>s) with
// a fixed probability for the first requested label; unknown targets get
// `fallback`.
class TableClassifier : public Classifier {
 public:
  explicit TableClassifier(std::map<std::string, double> first_label_prob,
                           double fallback = 0.5);
  ClassDistribution Classify(std::string_view input_text,
                             std::span<const std::string> labels) override;

 private:
  std::map<std::string, double> table_;
  double fallback_;
};

// --- Oracle world ----------------------------------------------------------
// Synthetic stories whose moral actions carry @GOOD@, immoral actions @BAD@
// and plausible consequences @PLAUSIBLE@. Oracle experts read and write these
// sentinels, which makes constraint satisfaction exactly checkable.

inline constexpr std::string_view kGoodSentinel = "@GOOD@";
inline constexpr std::string_view kBadSentinel = "@BAD@";
inline constexpr std::string_view kPlausibleSentinel = "@PLAUSIBLE@";

// The sentinel a generator should emit for a prompt (decided by the
// prompt's final special token) and the text it emits on failure.
struct OracleTarget {
  std::string success;
  std::string failure;
};
OracleTarget OracleTargetFor(std::string_view prompt);

// Candidate i is "cand <hex tag> <sentinel>" where the success sentinel is
// used with probability success_rate. The stream is
// SplitMix64(Mix64(seed ^ Fnv1a64(prompt))), two draws per candidate: the
// unit draw decides success, the next 64 bits give the tag.
class OracleGenerator : public Generator {
 public:
  explicit OracleGenerator(double success_rate);
  std::vector<Candidate> Generate(std::string_view prompt,
                                  const DecodeParams& params) override;

 private:
  double success_rate_;
};

// Reads sentinels in the classification target. {moral, immoral}: @GOOD@ ->
// moral 1.0, @BAD@ -> immoral 1.0, neither -> 0.5 each. {plausible,
// implausible}: @PLAUSIBLE@ -> plausible 1.0, otherwise implausible 1.0.
// With accuracy < 1 the distribution is swapped when
// SplitMix64(Mix64(seed ^ Fnv1a64(input_text))).NextUnit() >= accuracy.
class OracleClassifier : public Classifier {
 public:
  explicit OracleClassifier(double accuracy = 1.0, uint64_t seed = 0);
  ClassDistribution Classify(std::string_view input_text,
                             std::span<const std::string> labels) override;

 private:
  double accuracy_;
  uint64_t seed_;
};

// --- Call counting ---------------------------------------------------------

class CountingGenerator : public Generator {
 public:
  explicit CountingGenerator(std::shared_ptr<Generator> inner);
  std::vector<Candidate> Generate(std::string_view prompt,
                                  const DecodeParams& params) override;
  size_t calls() const { return calls_; }
  size_t candidates() const { return candidates_; }

 private:
  std::shared_ptr<Generator> inner_;
  std::atomic<size_t> calls_{0};
  std::atomic<size_t> candidates_{0};
};

class CountingClassifier : public Classifier {
 public:
  explicit CountingClassifier(std::shared_ptr<Classifier> inner);
  ClassDistribution Classify(std::string_view input_text,
                             std::span<const std::string> labels) override;
  size_t calls() const { return calls_; }

 private:
  std::shared_ptr<Classifier> inner_;
  std::atomic<size_t> calls_{0};
};

}  // namespace normchain::mock

#endif  // NORMCHAIN_MOCK_PROVIDERS_H_
