// Copyright 2026 The wpir-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WPIR_RNG_H_
#define WPIR_RNG_H_

#include <cstdint>
#include <vector>

namespace wpir {

// Counter-based deterministic generator (SplitMix64). Streams are cheap to
// fork: trial t of a seeded experiment runs on SplitMix64(seed ^ t), so
// parallel schedules reproduce serial results exactly.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t Next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double NextUnit() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

  // Unbiased uniform integer in [0, bound).
  uint64_t NextBelow(uint64_t bound) {
    const uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const uint64_t r = Next();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform permutation of [0, size) by Fisher-Yates.
  std::vector<uint32_t> NextPermutation(uint32_t size) {
    std::vector<uint32_t> perm(size);
    for (uint32_t i = 0; i < size; ++i) perm[i] = i;
    for (uint32_t i = size; i > 1; --i) {
      const uint64_t j = NextBelow(i);
      std::swap(perm[i - 1], perm[j]);
    }
    return perm;
  }

 private:
  uint64_t state_;
};

}  // namespace wpir

#endif  // WPIR_RNG_H_
