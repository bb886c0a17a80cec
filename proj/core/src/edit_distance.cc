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

#include "normchain/edit_distance.h"

#include <algorithm>
#include <string>
#include <vector>

#include "normchain/text.h"

namespace normchain {
namespace {

std::u32string Prepare(std::string_view s) {
  return text::DecodeUtf8(text::AsciiLower(s));
}

size_t Osa(const std::u32string& a, const std::u32string& b) {
  const size_t n = a.size();
  const size_t m = b.size();
  if (n == 0) return m;
  if (m == 0) return n;
  // Three rolling rows: i-2, i-1, i.
  std::vector<size_t> prev2(m + 1), prev(m + 1), cur(m + 1);
  for (size_t j = 0; j <= m; ++j) prev[j] = j;
  for (size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= m; ++j) {
      const size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      size_t best = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
        best = std::min(best, prev2[j - 2] + 1);
      }
      cur[j] = best;
    }
    std::swap(prev2, prev);
    std::swap(prev, cur);
  }
  return prev[m];
}

}  // namespace

size_t DamerauLevenshtein(std::string_view a, std::string_view b) {
  return Osa(Prepare(a), Prepare(b));
}

double NormalizedDamerauLevenshtein(std::string_view a, std::string_view b) {
  const std::u32string pa = Prepare(a);
  const std::u32string pb = Prepare(b);
  const size_t denom = std::max(pa.size(), pb.size());
  if (denom == 0) return 0.0;
  return static_cast<double>(Osa(pa, pb)) / static_cast<double>(denom);
}

}  // namespace normchain
