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

#include "normchain/synthetic.h"

#include <array>
#include <cmath>
#include <cstdio>
#include <span>

#include "normchain/rng.h"

namespace normchain::synthetic {
namespace {

constexpr std::array<const char*, 8> kMoralVerbs = {
    "helps", "shares", "apologizes", "thanks",
    "donates", "comforts", "volunteers", "forgives"};
constexpr std::array<const char*, 8> kImmoralVerbs = {
    "ignores", "shouts", "steals", "lies",
    "mocks", "cheats", "insults", "abandons"};
constexpr std::array<const char*, 12> kFiller = {
    "the", "friend", "at", "home", "quietly", "after",
    "work", "neighbor", "later", "in", "public", "again"};
constexpr std::array<const char*, 10> kTopics = {
    "family", "money", "school", "work", "pets",
    "neighbors", "food", "travel", "health", "friends"};

std::string Pick(SplitMix64& rng, std::span<const char* const> words) {
  return words[rng.Next() % words.size()];
}

std::string Id(const char* prefix, size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%05zu", prefix, i);
  return buf;
}

EmbeddingVector RandomUnit(SplitMix64& rng, size_t dim) {
  EmbeddingVector v(dim);
  double norm = 0.0;
  for (double& x : v) {
    x = rng.NextUnit() * 2.0 - 1.0;
    norm += x * x;
  }
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
  return v;
}

}  // namespace

AuditCorpus MakeAuditCorpus(size_t n, uint64_t seed, size_t groups,
                            size_t dim) {
  SplitMix64 rng(Mix64(seed));
  AuditCorpus out;

  const EmbeddingVector hub = RandomUnit(rng, dim);
  std::vector<EmbeddingVector> centers;
  for (size_t g = 0; g < groups; ++g) {
    EmbeddingVector c = RandomUnit(rng, dim);
    if (g < groups / 4) {
      // Crowded region: mostly hub direction.
      for (size_t d = 0; d < dim; ++d) c[d] = 0.9 * hub[d] + 0.1 * c[d];
    }
    centers.push_back(std::move(c));
  }

  for (size_t i = 0; i < n; ++i) {
    const size_t g = i % groups;
    Story s;
    s.id = Id("st", i);
    s.norm = "It is right to care about " + std::string(kTopics[g % 10]) +
             " matters of group " + std::to_string(g) + " case " +
             std::to_string(i) + ".";
    s.situation = "Someone is dealing with " + std::string(kTopics[g % 10]) +
                  " at " + Pick(rng, kFiller) + " " + Pick(rng, kFiller) + ".";
    s.intention = "They want to " + Pick(rng, kFiller) + " " +
                  Pick(rng, kFiller) + ".";

    // Bias level 0..3 class-skewed verbs in each action.
    const size_t bias = rng.Next() % 4;
    std::string shared;
    const size_t shared_words = 2 + rng.Next() % 10;
    for (size_t w = 0; w < shared_words; ++w) {
      shared += " " + Pick(rng, kFiller);
    }
    std::string moral_own;
    std::string immoral_own;
    for (size_t b = 0; b < bias; ++b) {
      moral_own += " " + Pick(rng, kMoralVerbs);
      immoral_own += " " + Pick(rng, kImmoralVerbs);
    }
    const size_t own_words = 1 + rng.Next() % 4;
    for (size_t w = 0; w < own_words; ++w) {
      moral_own += " " + Pick(rng, kFiller);
      immoral_own += " " + Pick(rng, kFiller);
    }
    s.moral_action = "They" + moral_own + shared + ".";
    s.immoral_action = "They" + immoral_own + shared + ".";
    s.moral_consequence = "Everyone" + shared + " feels better.";
    s.immoral_consequence = "Everyone" + shared + " feels upset.";

    EmbeddingVector v = centers[g];
    for (double& x : v) x += 0.02 * (rng.NextUnit() * 2.0 - 1.0);
    out.norm_vectors[s.norm] = std::move(v);
    out.stories.push_back(std::move(s));
  }
  return out;
}

std::vector<Story> MakeOracleWorldStories(size_t n, uint64_t seed) {
  SplitMix64 rng(Mix64(seed ^ 0x6f7261636c65ULL));
  std::vector<Story> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const std::string topic = kTopics[rng.Next() % kTopics.size()];
    Story s;
    s.id = Id("ow", i);
    s.norm = "Be considerate about " + topic + ".";
    s.situation = "A person faces a " + topic + " problem " +
                  std::to_string(i) + ".";
    s.intention = "They want to settle the " + topic + " problem.";
    s.moral_action = "They " + Pick(rng, kMoralVerbs) + " @GOOD@";
    s.immoral_action = "They " + Pick(rng, kImmoralVerbs) + " @BAD@";
    s.moral_consequence = "Things go well @PLAUSIBLE@";
    s.immoral_consequence = "Things go badly @PLAUSIBLE@";
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace normchain::synthetic
