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

#ifndef NORMCHAIN_EDIT_DISTANCE_H_
#define NORMCHAIN_EDIT_DISTANCE_H_

#include <cstddef>
#include <string_view>

namespace normchain {

// Restricted Damerau-Levenshtein (optimal string alignment) distance over
// code points after ASCII lowercasing. Insertions, deletions, substitutions
// and transpositions of adjacent characters each cost 1; a substring is
// never edited twice.
size_t DamerauLevenshtein(std::string_view a, std::string_view b);

// DamerauLevenshtein(a, b) / max(|a|, |b|) in code points; 0 when both are
// empty.
double NormalizedDamerauLevenshtein(std::string_view a, std::string_view b);

}  // namespace normchain

#endif  // NORMCHAIN_EDIT_DISTANCE_H_
