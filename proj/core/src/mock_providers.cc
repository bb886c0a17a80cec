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

#include "normchain/mock_providers.h"

#include <cstdio>

#include "normchain/error.h"
#include "normchain/rng.h"
#include "normchain/tasks.h"
#include "normchain/text.h"

namespace normchain::mock {
namespace {

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

// Target segment of a classification input, or the whole text otherwise.
std::string_view ClassificationTarget(std::string_view input) {
  const size_t first = input.find(tokens::kSep);
  if (first == std::string_view::npos) return input;
  std::string_view rest = input.substr(first + tokens::kSep.size());
  const size_t second = rest.find(tokens::kSep);
  return second == std::string_view::npos ? rest : rest.substr(0, second);
}

std::string Hex24(uint64_t v) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%06llx",
                static_cast<unsigned long long>(v & 0xffffff));
  return buf;
}

bool IsPlausibilityLabels(std::span<const std::string> labels) {
  return labels.size() == 2 && labels[0] == kPlausibleLabel &&
         labels[1] == kImplausibleLabel;
}

bool IsMoralityLabels(std::span<const std::string> labels) {
  return labels.size() == 2 && labels[0] == kMoralLabel &&
         labels[1] == kImmoralLabel;
}

}  // namespace

std::vector<Candidate> EchoGenerator::Generate(std::string_view prompt,
                                               const DecodeParams& params) {
  params.Validate();
  std::vector<Candidate> out;
  for (int i = 0; i < params.n; ++i) out.push_back({std::string(prompt), i, {}});
  return out;
}

HashedNgramEmbedder::HashedNgramEmbedder(size_t dim, size_t n, uint64_t seed)
    : dim_(dim), n_(n), seed_(seed) {
  if (dim_ == 0 || n_ == 0) {
    throw ConfigError("hashed n-gram embedder needs dim > 0 and n > 0");
  }
}

EmbeddingVector HashedNgramEmbedder::EmbedOne(std::string_view text) const {
  EmbeddingVector v(dim_, 0.0);
  if (text.empty()) return v;
  auto add = [&](std::string_view gram) {
    v[Mix64(Fnv1a64(gram) ^ seed_) % dim_] += 1.0;
  };
  if (text.size() < n_) {
    add(text);
  } else {
    for (size_t i = 0; i + n_ <= text.size(); ++i) add(text.substr(i, n_));
  }
  return v;
}

std::vector<EmbeddingVector> HashedNgramEmbedder::Embed(
    std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const std::string& t : texts) out.push_back(EmbedOne(t));
  return out;
}

TableEmbedder::TableEmbedder(std::map<std::string, EmbeddingVector> table)
    : table_(std::move(table)) {}

std::vector<EmbeddingVector> TableEmbedder::Embed(
    std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  for (const std::string& t : texts) {
    auto it = table_.find(t);
    if (it == table_.end()) {
      throw ProviderError("no embedding for text '" + t + "'");
    }
    out.push_back(it->second);
  }
  return out;
}

TableClassifier::TableClassifier(std::map<std::string, double> first_label_prob,
                                 double fallback)
    : table_(std::move(first_label_prob)), fallback_(fallback) {}

ClassDistribution TableClassifier::Classify(
    std::string_view input_text, std::span<const std::string> labels) {
  if (labels.size() != 2) {
    throw ProviderError("table classifier supports binary label sets only");
  }
  auto it = table_.find(std::string(ClassificationTarget(input_text)));
  const double p = it == table_.end() ? fallback_ : it->second;
  ClassDistribution d;
  d.probs[labels[0]] = p;
  d.probs[labels[1]] = 1.0 - p;
  return d;
}

OracleTarget OracleTargetFor(std::string_view prompt) {
  const std::string_view trimmed = text::Trim(prompt);
  if (EndsWith(trimmed, tokens::kMoralAction)) {
    return {std::string(kGoodSentinel), std::string(kBadSentinel)};
  }
  if (EndsWith(trimmed, tokens::kImmoralAction)) {
    return {std::string(kBadSentinel), std::string(kGoodSentinel)};
  }
  if (EndsWith(trimmed, tokens::kConsequence)) {
    return {std::string(kPlausibleSentinel), std::string()};
  }
  return {std::string(), std::string()};
}

OracleGenerator::OracleGenerator(double success_rate)
    : success_rate_(success_rate) {
  if (!(success_rate >= 0.0 && success_rate <= 1.0)) {
    throw ConfigError("oracle success rate must lie in [0, 1]");
  }
}

std::vector<Candidate> OracleGenerator::Generate(std::string_view prompt,
                                                 const DecodeParams& params) {
  params.Validate();
  const OracleTarget target = OracleTargetFor(prompt);
  SplitMix64 stream(Mix64(params.seed ^ Fnv1a64(prompt)));
  std::vector<Candidate> out;
  out.reserve(static_cast<size_t>(params.n));
  for (int i = 0; i < params.n; ++i) {
    const bool success = stream.NextUnit() < success_rate_;
    const uint64_t tag = stream.Next();
    std::string text = "cand " + Hex24(tag);
    const std::string& sentinel = success ? target.success : target.failure;
    if (!sentinel.empty()) text += " " + sentinel;
    out.push_back({std::move(text), i, {}});
  }
  return out;
}

OracleClassifier::OracleClassifier(double accuracy, uint64_t seed)
    : accuracy_(accuracy), seed_(seed) {
  if (!(accuracy >= 0.0 && accuracy <= 1.0)) {
    throw ConfigError("oracle accuracy must lie in [0, 1]");
  }
}

ClassDistribution OracleClassifier::Classify(
    std::string_view input_text, std::span<const std::string> labels) {
  const std::string_view target = ClassificationTarget(input_text);
  double first = 0.5;
  if (IsMoralityLabels(labels)) {
    if (target.find(kGoodSentinel) != std::string_view::npos) {
      first = 1.0;
    } else if (target.find(kBadSentinel) != std::string_view::npos) {
      first = 0.0;
    }
  } else if (IsPlausibilityLabels(labels)) {
    first = target.find(kPlausibleSentinel) != std::string_view::npos ? 1.0
                                                                      : 0.0;
  } else {
    throw ProviderError("oracle classifier cannot score this label set");
  }
  if (accuracy_ < 1.0) {
    SplitMix64 noise(Mix64(seed_ ^ Fnv1a64(input_text)));
    if (noise.NextUnit() >= accuracy_) first = 1.0 - first;
  }
  ClassDistribution d;
  d.probs[labels[0]] = first;
  d.probs[labels[1]] = 1.0 - first;
  return d;
}

CountingGenerator::CountingGenerator(std::shared_ptr<Generator> inner)
    : inner_(std::move(inner)) {}

std::vector<Candidate> CountingGenerator::Generate(std::string_view prompt,
                                                   const DecodeParams& params) {
  ++calls_;
  auto out = inner_->Generate(prompt, params);
  candidates_ += out.size();
  return out;
}

CountingClassifier::CountingClassifier(std::shared_ptr<Classifier> inner)
    : inner_(std::move(inner)) {}

ClassDistribution CountingClassifier::Classify(
    std::string_view input_text, std::span<const std::string> labels) {
  ++calls_;
  return inner_->Classify(input_text, labels);
}

}  // namespace normchain::mock
