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

#include "normchain/providers.h"

#include <array>
#include <cmath>

#include "normchain/error.h"

namespace normchain {
namespace {

struct RoleInfo {
  Role role;
  std::string_view name;
  RoleKind kind;
};

constexpr std::array<RoleInfo, 10> kRoles = {{
    {Role::kActionGenContext, "action_gen_context", RoleKind::kGenerator},
    {Role::kActionClsContext, "action_cls_context", RoleKind::kClassifier},
    {Role::kConseqGenContextAction, "conseq_gen_context_action",
     RoleKind::kGenerator},
    {Role::kConseqClsContextAction, "conseq_cls_context_action",
     RoleKind::kClassifier},
    {Role::kActionGenContextConseq, "action_gen_context_conseq",
     RoleKind::kGenerator},
    {Role::kActionClsContextConseq, "action_cls_context_conseq",
     RoleKind::kClassifier},
    {Role::kConseqRefiner, "conseq_refiner", RoleKind::kGenerator},
    {Role::kNormGenFull, "norm_gen_full", RoleKind::kGenerator},
    {Role::kJudge, "judge", RoleKind::kClassifier},
    {Role::kEmbedder, "embedder", RoleKind::kEmbedder},
}};

}  // namespace

void DecodeParams::Validate() const {
  if (n < 1) throw ConfigError("decode.n must be positive");
  if (!(top_p > 0.0 && top_p <= 1.0)) {
    throw ConfigError("decode.top_p must lie in (0, 1]");
  }
  if (max_new_tokens < 1) {
    throw ConfigError("decode.max_new_tokens must be positive");
  }
}

double ClassDistribution::prob(std::string_view label) const {
  auto it = probs.find(std::string(label));
  return it == probs.end() ? 0.0 : it->second;
}

void ClassDistribution::Validate(std::span<const std::string> expected) const {
  if (probs.size() != expected.size()) {
    throw ProviderError("malformed distribution: expected " +
                        std::to_string(expected.size()) + " labels, got " +
                        std::to_string(probs.size()));
  }
  double sum = 0.0;
  for (const std::string& label : expected) {
    auto it = probs.find(label);
    if (it == probs.end()) {
      throw ProviderError("malformed distribution: missing label '" + label +
                          "'");
    }
    if (!std::isfinite(it->second) || it->second < 0.0 || it->second > 1.0) {
      throw ProviderError("malformed distribution: probability of '" + label +
                          "' out of range");
    }
    sum += it->second;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw ProviderError("malformed distribution: probabilities sum to " +
                        std::to_string(sum));
  }
}

std::string_view RoleName(Role role) {
  for (const RoleInfo& info : kRoles) {
    if (info.role == role) return info.name;
  }
  return "unknown";
}

std::optional<Role> ParseRole(std::string_view name) {
  for (const RoleInfo& info : kRoles) {
    if (info.name == name) return info.role;
  }
  return std::nullopt;
}

RoleKind KindOf(Role role) {
  for (const RoleInfo& info : kRoles) {
    if (info.role == role) return info.kind;
  }
  return RoleKind::kGenerator;
}

const std::vector<std::string>& LabelsFor(Role role) {
  static const std::vector<std::string> kMorality = {
      std::string(kMoralLabel), std::string(kImmoralLabel)};
  static const std::vector<std::string> kPlausibility = {
      std::string(kPlausibleLabel), std::string(kImplausibleLabel)};
  switch (role) {
    case Role::kConseqClsContextAction:
      return kPlausibility;
    default:
      return kMorality;
  }
}

std::vector<Candidate> CheckCandidates(std::vector<Candidate> candidates,
                                       int n) {
  if (candidates.size() < static_cast<size_t>(n)) {
    throw ProviderError("generator returned " +
                        std::to_string(candidates.size()) +
                        " candidates, expected " + std::to_string(n));
  }
  candidates.resize(static_cast<size_t>(n));
  for (size_t i = 0; i < candidates.size(); ++i) {
    candidates[i].gen_index = static_cast<int>(i);
    candidates[i].score.reset();
  }
  return candidates;
}

void CheckEmbeddings(const std::vector<EmbeddingVector>& vectors,
                     size_t expected_count) {
  if (vectors.size() != expected_count) {
    throw ProviderError("embedder returned " + std::to_string(vectors.size()) +
                        " vectors for " + std::to_string(expected_count) +
                        " texts");
  }
  for (const EmbeddingVector& v : vectors) {
    if (v.size() != vectors.front().size() || v.empty()) {
      throw ProviderError("embedder returned ragged dimensions");
    }
    for (double x : v) {
      if (!std::isfinite(x)) {
        throw ProviderError("embedder returned a non-finite value");
      }
    }
  }
}

}  // namespace normchain
