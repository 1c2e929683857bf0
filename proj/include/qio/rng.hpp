// Copyright 2026 The qio developers
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

/// The pinned random generator for every stochastic routine in qio.
///
/// Reproducibility contract (do not change without bumping results):
///   * Generator: SplitMix64 (Steele, Lea & Flood 2014). 64-bit state,
///     increment 0x9e3779b97f4a7c15, finalizer mix as below.
///   * Doubles: u64 >> 11 scaled by 2^-53, giving uniforms in [0, 1).
///   * Stream splitting: the stream for item index i under master seed s
///     starts from state mix64(s ^ mix64(i + 0x632be59bd9b4e019)).
/// The same seed therefore yields bit-identical draws on every platform,
/// independent of the standard library.

#pragma once

#include <cstdint>

namespace qio {

inline uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  /// Uniform double in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

 private:
  uint64_t state_;
};

/// Independent per-index stream under a master seed.
inline SplitMix64 stream_for_index(uint64_t seed, uint64_t index) {
  return SplitMix64(mix64(seed ^ mix64(index + 0x632be59bd9b4e019ULL)));
}

}  // namespace qio
