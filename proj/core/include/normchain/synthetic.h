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

#ifndef NORMCHAIN_SYNTHETIC_H_
#define NORMCHAIN_SYNTHETIC_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "normchain/corpus.h"
#include "normchain/providers.h"

namespace normchain::synthetic {

// A corpus with planted structure for auditing splits:
//  * norms fall into `groups` clusters around random centers; the first
//    quarter of the centers are pulled towards a shared hub (low isolation)
//    and the rest are spread out, so DoI varies across clusters;
//  * actions mix class-skewed verbs (moral: help, share, ...; immoral:
//    ignore, shout, ...) with neutral filler, at a per-story bias level;
//  * the immoral action reuses a per-story share of the moral wording, so
//    the normalized pair distance varies across stories.
struct AuditCorpus {
  std::vector<Story> stories;
  // Norm text -> planted embedding, for TableEmbedder.
  std::map<std::string, EmbeddingVector> norm_vectors;
};

AuditCorpus MakeAuditCorpus(size_t n, uint64_t seed, size_t groups = 40,
                            size_t dim = 32);

// Stories whose moral actions contain @GOOD@, immoral actions @BAD@ and both
// consequences @PLAUSIBLE@. Ids are "ow00000", "ow00001", ...
std::vector<Story> MakeOracleWorldStories(size_t n, uint64_t seed);

}  // namespace normchain::synthetic

#endif  // NORMCHAIN_SYNTHETIC_H_
