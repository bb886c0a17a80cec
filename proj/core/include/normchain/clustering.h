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

#ifndef NORMCHAIN_CLUSTERING_H_
#define NORMCHAIN_CLUSTERING_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "normchain/providers.h"

namespace normchain {

struct Cluster {
  // Smallest input position among the members; stable cluster identity
  // used for tie-breaking.
  size_t id = 0;
  std::vector<std::string> member_ids;  // sorted
  EmbeddingVector centroid;
  double doi = 0.0;  // degree of isolation
};

// 1 - cos(u, v). A zero vector is dissimilar to everything (distance 1).
double CosineDistance(std::span<const double> u, std::span<const double> v);

// Bottom-up average-linkage clustering under cosine distance, merging until
// k clusters remain. Points are indexed in key order of `vectors`; among
// equally distant pairs the lexicographically lowest (i, j) merges first and
// the merged cluster keeps the lower index. Centroids are arithmetic means of
// the raw member vectors. DoI is filled in (0 when k == 1).
//
// Throws ConfigError when k is 0 or exceeds the number of points and
// DataError for a zero or non-finite vector or inconsistent dimensions.
//
// Memory is O(n^2) for the pairwise distance table.
std::vector<Cluster> AgglomerativeCluster(
    const std::map<std::string, EmbeddingVector>& vectors, size_t k);

// doi(c) = min over c' != c of CosineDistance(centroid(c), centroid(c')),
// clamped to [0, 2]. Throws ConfigError for fewer than two clusters.
void FillDegreeOfIsolation(std::vector<Cluster>& clusters);

}  // namespace normchain

#endif  // NORMCHAIN_CLUSTERING_H_
