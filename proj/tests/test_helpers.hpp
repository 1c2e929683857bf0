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

#pragma once

#include "qio/complex_matrix.hpp"
#include "qio/rng.hpp"

namespace qio::test {

inline Complex random_complex(SplitMix64& rng, double box = 1.0) {
  return {rng.uniform(-box, box), rng.uniform(-box, box)};
}

inline CMatrix random_matrix(SplitMix64& rng, int rows, int cols) {
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = random_complex(rng);
  return m;
}

inline CMatrix random_hermitian(SplitMix64& rng, int n) {
  CMatrix m = random_matrix(rng, n, n);
  return 0.5 * (m + m.adjoint());
}

/// Random unitary via Gram-Schmidt on a random matrix.
inline CMatrix random_unitary(SplitMix64& rng, int n) {
  CMatrix m = random_matrix(rng, n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < j; ++k) {
      Complex dot = 0.0;
      for (int i = 0; i < n; ++i) dot += std::conj(m(i, k)) * m(i, j);
      for (int i = 0; i < n; ++i) m(i, j) -= dot * m(i, k);
    }
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm += std::norm(m(i, j));
    norm = std::sqrt(norm);
    for (int i = 0; i < n; ++i) m(i, j) = m(i, j) * (1.0 / norm);
  }
  return m;
}

/// Diagonal-phase times permutation, the generic incoherent unitary.
inline CMatrix random_permutation_phase_unitary(SplitMix64& rng, int n) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_u64() % static_cast<uint64_t>(i + 1));
    std::swap(perm[i], perm[j]);
  }
  CMatrix u(n, n);
  for (int i = 0; i < n; ++i) {
    const double phi = rng.uniform(0.0, 6.283185307179586);
    u(perm[i], i) = Complex(std::cos(phi), std::sin(phi));
  }
  return u;
}

}  // namespace qio::test
