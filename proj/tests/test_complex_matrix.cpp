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

#include <catch2/catch_amalgamated.hpp>

#include "qio/complex_matrix.hpp"
#include "test_helpers.hpp"

using namespace qio;

TEST_CASE("matmul basics") {
  SplitMix64 rng(101);
  const CMatrix x = test::random_matrix(rng, 2, 2);
  const CMatrix i2 = CMatrix::identity(2);
  REQUIRE(max_abs_diff(i2 * x, x) == 0.0);

  const CMatrix sx{{0.0, 1.0}, {1.0, 0.0}};
  REQUIRE(max_abs_diff(sx * sx, i2) == 0.0);

  SECTION("associativity on random 2x2 triples") {
    for (int t = 0; t < 50; ++t) {
      const CMatrix a = test::random_matrix(rng, 2, 2);
      const CMatrix b = test::random_matrix(rng, 2, 2);
      const CMatrix c = test::random_matrix(rng, 2, 2);
      REQUIRE(max_abs_diff((a * b) * c, a * (b * c)) < 1e-12);
    }
  }

  SECTION("shape mismatch throws") {
    const CMatrix a = test::random_matrix(rng, 2, 3);
    const CMatrix b = test::random_matrix(rng, 2, 3);
    REQUIRE_THROWS_AS(a * b, DimensionError);
  }
}

TEST_CASE("adjoint") {
  SplitMix64 rng(102);
  const CMatrix h = test::random_hermitian(rng, 3);
  REQUIRE(max_abs_diff(h.adjoint(), h) < 1e-15);

  const CMatrix m{{Complex(0, 0), Complex(0, 1)}, {Complex(0, 0), Complex(0, 0)}};
  const CMatrix expect{{Complex(0, 0), Complex(0, 0)}, {Complex(0, -1), Complex(0, 0)}};
  REQUIRE(max_abs_diff(m.adjoint(), expect) == 0.0);

  const CMatrix a = test::random_matrix(rng, 4, 2);
  REQUIRE(max_abs_diff(a.adjoint().adjoint(), a) == 0.0);
}

TEST_CASE("non-finite entries are rejected") {
  REQUIRE_THROWS_AS(CMatrix({{Complex(1.0 / 0.0, 0.0)}}), ValidationError);
}

TEST_CASE("hermitian_eigen on fixed spectra") {
  const CMatrix d{{3.0, 0.0}, {0.0, 1.0}};
  auto eig = hermitian_eigen(d);
  REQUIRE(eig.values[0] == Catch::Approx(3.0));
  REQUIRE(eig.values[1] == Catch::Approx(1.0));
  REQUIRE(max_abs_diff(eig.vectors, CMatrix::identity(2)) < 1e-14);

  const CMatrix sx{{0.0, 1.0}, {1.0, 0.0}};
  eig = hermitian_eigen(sx);
  REQUIRE(eig.values[0] == Catch::Approx(1.0));
  REQUIRE(eig.values[1] == Catch::Approx(-1.0));
}

TEST_CASE("hermitian_eigen reconstruction and unitarity on random 9x9") {
  SplitMix64 rng(103);
  for (int t = 0; t < 20; ++t) {
    const CMatrix a = test::random_hermitian(rng, 9);
    const auto eig = hermitian_eigen(a);

    CMatrix lambda(9, 9);
    for (int i = 0; i < 9; ++i) lambda(i, i) = eig.values[i];
    const CMatrix rebuilt = eig.vectors * lambda * eig.vectors.adjoint();
    REQUIRE(max_abs_diff(rebuilt, a) < 1e-10);

    // eigenvector Gram matrix is the identity
    REQUIRE(max_abs_diff(eig.vectors.adjoint() * eig.vectors, CMatrix::identity(9)) < 1e-10);

    // eigenvalue sum matches the trace
    double sum = 0.0;
    for (double l : eig.values) sum += l;
    REQUIRE(sum == Catch::Approx(a.trace().real()).margin(1e-10 * std::max(1.0, a.max_abs())));

    // descending order
    REQUIRE(std::is_sorted(eig.values.rbegin(), eig.values.rend()));
  }
}

TEST_CASE("hermitian_eigen rejects bad input") {
  SplitMix64 rng(104);
  REQUIRE_THROWS_AS(hermitian_eigen(test::random_matrix(rng, 2, 3)), DimensionError);
  const CMatrix notherm{{0.0, 1.0}, {0.0, 0.0}};
  REQUIRE_THROWS_AS(hermitian_eigen(notherm), ValidationError);
}

TEST_CASE("numerical_rank") {
  REQUIRE(numerical_rank(CMatrix::identity(4)) == 4);

  SplitMix64 rng(105);
  SECTION("rank-one projectors") {
    for (int t = 0; t < 20; ++t) {
      const CMatrix v = test::random_matrix(rng, 4, 1);
      REQUIRE(numerical_rank(v * v.adjoint()) == 1);
    }
  }

  SECTION("invariant under permutation-phase conjugation") {
    for (int t = 0; t < 20; ++t) {
      CMatrix a = test::random_hermitian(rng, 5);
      // truncate to rank 3
      auto eig = hermitian_eigen(a);
      CMatrix lambda(5, 5);
      for (int i = 0; i < 3; ++i) lambda(i, i) = std::abs(eig.values[i]) + 0.1;
      a = eig.vectors * lambda * eig.vectors.adjoint();
      const CMatrix u = test::random_permutation_phase_unitary(rng, 5);
      REQUIRE(numerical_rank(u * a * u.adjoint()) == numerical_rank(a));
      REQUIRE(numerical_rank(a) == 3);
    }
  }

  SECTION("zero matrix has rank zero") {
    REQUIRE(numerical_rank(CMatrix(3, 3)) == 0);
  }
}

TEST_CASE("is_psd") {
  REQUIRE(is_psd(CMatrix{{1.0, 0.0}, {0.0, 0.0}}));
  REQUIRE_FALSE(is_psd(CMatrix{{1.0, 0.0}, {0.0, -0.1}}));
  REQUIRE(is_psd(CMatrix(2, 2)));  // zero matrix counts as PSD

  SplitMix64 rng(106);
  for (int t = 0; t < 20; ++t) {
    const CMatrix v = test::random_matrix(rng, 6, 1);
    REQUIRE(is_psd(v * v.adjoint()));
  }
}
