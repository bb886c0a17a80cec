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

#ifndef NORMCHAIN_RNG_H_
#define NORMCHAIN_RNG_H_

#include <cstdint>
#include <string_view>

namespace normchain {

// 64-bit FNV-1a. Used wherever a stable, platform-independent hash of text
// is part of an output contract (mock embeddings, per-sample seeds).
constexpr uint64_t Fnv1a64(std::string_view data,
                           uint64_t basis = 0xcbf29ce484222325ULL) {
  uint64_t h = basis;
  for (char c : data) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// SplitMix64 stream. Chosen over <random> engines + distributions because
// the standard distributions are not reproducible across library vendors.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(uint64_t seed) : state_(seed) {}

  constexpr uint64_t Next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of precision.
  constexpr double NextUnit() {
    return static_cast<double>(Next() >> 11) * 0x1.0p-53;
  }

 private:
  uint64_t state_;
};

// Derives an independent seed from a base seed and a textual key.
inline uint64_t DeriveSeed(uint64_t base, std::string_view key) {
  return Mix64(base ^ Fnv1a64(key));
}

}  // namespace normchain

#endif  // NORMCHAIN_RNG_H_
