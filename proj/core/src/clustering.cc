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

#include "normchain/clustering.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "normchain/error.h"

namespace normchain {
namespace {

double Dot(std::span<const double> u, std::span<const double> v) {
  double s = 0.0;
  for (size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

// Condensed symmetric distance table over n points.
class DistanceTable {
 public:
  explicit DistanceTable(size_t n) : n_(n), data_(n * (n - 1) / 2) {}

  double& at(size_t i, size_t j) {
    if (i > j) std::swap(i, j);
    return data_[Index(i, j)];
  }

 private:
  size_t Index(size_t i, size_t j) const {
    // Row i (i < j) starts after rows 0..i-1 of lengths n-1, n-2, ...
    return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
  }

  size_t n_;
  std::vector<double> data_;
};

}  // namespace

double CosineDistance(std::span<const double> u, std::span<const double> v) {
  const double nu = std::sqrt(Dot(u, u));
  const double nv = std::sqrt(Dot(v, v));
  if (nu == 0.0 || nv == 0.0) return 1.0;
  const double cos = std::clamp(Dot(u, v) / (nu * nv), -1.0, 1.0);
  return 1.0 - cos;
}

std::vector<Cluster> AgglomerativeCluster(
    const std::map<std::string, EmbeddingVector>& vectors, size_t k) {
  const size_t n = vectors.size();
  if (k == 0) throw ConfigError("cluster count k must be positive");
  if (k > n) {
    throw ConfigError("cluster count k = " + std::to_string(k) +
                      " exceeds number of points " + std::to_string(n));
  }

  std::vector<std::string> ids;
  std::vector<const EmbeddingVector*> points;
  ids.reserve(n);
  points.reserve(n);
  for (const auto& [id, v] : vectors) {
    if (!points.empty() && v.size() != points.front()->size()) {
      throw DataError("embedding of '" + id + "' has dimension " +
                      std::to_string(v.size()) + ", expected " +
                      std::to_string(points.front()->size()));
    }
    bool nonzero = false;
    for (double x : v) {
      if (!std::isfinite(x)) {
        throw DataError("embedding of '" + id + "' is not finite");
      }
      nonzero = nonzero || x != 0.0;
    }
    if (!nonzero) {
      throw DataError("embedding of '" + id +
                      "' is the zero vector; cosine distance is undefined");
    }
    ids.push_back(id);
    points.push_back(&v);
  }

  // Members per active cluster (indexed by the cluster's lowest point).
  std::vector<std::vector<size_t>> members(n);
  for (size_t i = 0; i < n; ++i) members[i] = {i};
  std::vector<bool> active(n, true);

  if (k < n) {
    DistanceTable dist(n);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        dist.at(i, j) = CosineDistance(*points[i], *points[j]);
      }
    }

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<size_t> nearest(n, 0);
    std::vector<double> nearest_dist(n, kInf);
    auto refresh = [&](size_t i) {
      nearest_dist[i] = kInf;
      for (size_t j = 0; j < n; ++j) {
        if (j == i || !active[j]) continue;
        const double d = dist.at(i, j);
        if (d < nearest_dist[i]) {
          nearest_dist[i] = d;
          nearest[i] = j;
        }
      }
    };
    for (size_t i = 0; i < n; ++i) refresh(i);

    for (size_t remaining = n; remaining > k; --remaining) {
      // Lowest i with the global minimum; its nearest is the lowest partner,
      // which together gives the lexicographically lowest closest pair.
      size_t a = n;
      for (size_t i = 0; i < n; ++i) {
        if (!active[i]) continue;
        if (a == n || nearest_dist[i] < nearest_dist[a]) a = i;
      }
      size_t b = nearest[a];
      if (b < a) std::swap(a, b);

      const double wa = static_cast<double>(members[a].size());
      const double wb = static_cast<double>(members[b].size());
      active[b] = false;
      for (size_t j = 0; j < n; ++j) {
        if (!active[j] || j == a) continue;
        // Lance-Williams update for average linkage.
        dist.at(a, j) = (wa * dist.at(a, j) + wb * dist.at(b, j)) / (wa + wb);
      }
      members[a].insert(members[a].end(), members[b].begin(), members[b].end());
      members[b].clear();

      refresh(a);
      for (size_t j = 0; j < n; ++j) {
        if (!active[j] || j == a) continue;
        if (nearest[j] == a || nearest[j] == b) {
          refresh(j);
        } else {
          const double d = dist.at(a, j);
          if (d < nearest_dist[j] || (d == nearest_dist[j] && a < nearest[j])) {
            nearest_dist[j] = d;
            nearest[j] = a;
          }
        }
      }
    }
  }

  const size_t dim = points.empty() ? 0 : points.front()->size();
  std::vector<Cluster> clusters;
  clusters.reserve(k);
  for (size_t i = 0; i < n; ++i) {
    if (!active[i]) continue;
    Cluster c;
    c.id = i;
    c.centroid.assign(dim, 0.0);
    for (size_t m : members[i]) {
      c.member_ids.push_back(ids[m]);
      for (size_t d = 0; d < dim; ++d) c.centroid[d] += (*points[m])[d];
    }
    for (double& x : c.centroid) x /= static_cast<double>(members[i].size());
    std::sort(c.member_ids.begin(), c.member_ids.end());
    clusters.push_back(std::move(c));
  }
  if (clusters.size() >= 2) FillDegreeOfIsolation(clusters);
  return clusters;
}

void FillDegreeOfIsolation(std::vector<Cluster>& clusters) {
  if (clusters.size() < 2) {
    throw ConfigError("degree of isolation needs at least two clusters");
  }
  for (size_t i = 0; i < clusters.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < clusters.size(); ++j) {
      if (i == j) continue;
      best = std::min(best, CosineDistance(clusters[i].centroid,
                                           clusters[j].centroid));
    }
    clusters[i].doi = std::clamp(best, 0.0, 2.0);
  }
}

}  // namespace normchain
