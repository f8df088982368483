// Copyright 2026 The syneval Authors. All Rights Reserved.
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

#ifndef SYNEVAL_RNG_H_
#define SYNEVAL_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace syneval {

// Deterministic generator used everywhere randomness is needed. The standard
// distributions are implementation-defined, so uniform and normal draws are
// derived from the raw engine output here to keep streams identical across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller (one draw per call, no cached pair).
  double normal();

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; a bijective avalanche mix of 64 bits.
std::uint64_t mix64(std::uint64_t x);

// Derives an independent child seed from a parent seed and a tag (for
// example a sample id). Stable across platforms and runs.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

}  // namespace syneval

#endif  // SYNEVAL_RNG_H_
