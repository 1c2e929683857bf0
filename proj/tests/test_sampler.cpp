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

#include "qio/decompose.hpp"
#include "qio/sampler.hpp"

using namespace qio;

TEST_CASE("sample_io lands exactly on the normalization surface") {
  SplitMix64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const CanonicalIO4 form = sample_io(rng);
    REQUIRE(form.r >= 1.0);
    REQUIRE(form.r < 2.0);
    const double rr = form.r * form.r + 1.0;
    const double a_side = form.alpha[1] * form.alpha[1] +
                          form.alpha[2] * form.alpha[2] +
                          rr * form.alpha[0] * form.alpha[0];
    const double b_side = std::norm(form.beta[1]) + std::norm(form.beta[2]) +
                          rr * std::norm(form.beta[0]);
    REQUIRE(a_side == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(b_side == Catch::Approx(1.0).margin(1e-12));
    // and the channel builds without complaint
    const QubitChannel ch = to_kraus(form);
    REQUIRE(ch.completeness_residual() < 1e-12);
  }
}

TEST_CASE("sample_io5 honors the rejection floor") {
  SplitMix64 rng(32);
  for (int t = 0; t < 100; ++t) {
    const CanonicalIO5 form = sample_io5(rng, 1e-2);
    for (double v : form.alpha) REQUIRE(v > 1e-2);
    for (const Complex& v : form.beta) REQUIRE(std::abs(v) > 1e-2);
    to_kraus(form);  // validates
  }
}

TEST_CASE("sampling is deterministic per (seed, index)") {
  SplitMix64 a = stream_for_index(123, 7);
  SplitMix64 b = stream_for_index(123, 7);
  for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());

  const CanonicalIO4 f1 = [&] {
    SplitMix64 rng = stream_for_index(99, 0);
    return sample_io(rng);
  }();
  const CanonicalIO4 f2 = [&] {
    SplitMix64 rng = stream_for_index(99, 0);
    return sample_io(rng);
  }();
  REQUIRE(f1.r == f2.r);
  for (int i = 0; i < 3; ++i) {
    REQUIRE(f1.alpha[i] == f2.alpha[i]);
    REQUIRE(f1.beta[i] == f2.beta[i]);
  }
}

TEST_CASE("pinned generator values do not drift") {
  // frozen SplitMix64 reference outputs for seed 0 and seed 42
  SplitMix64 rng0(0);
  REQUIRE(rng0.next_u64() == 0xe220a8397b1dcdafULL);
  REQUIRE(rng0.next_u64() == 0x6e789e6aa1b965f4ULL);
  REQUIRE(rng0.next_u64() == 0x06c45d188009454fULL);
  SplitMix64 rng42(42);
  REQUIRE(rng42.next_u64() == 0xbdd732262feb6e95ULL);
}

TEST_CASE("achievable_region") {
  SECTION("deterministic, norms inside the ball, channels decomposable") {
    SamplerConfig cfg;
    cfg.seed = 5;
    cfg.count = 2000;
    const BlochVector init{0.5, 0.0, 0.5};
    const RegionResult r1 = achievable_region(cfg, init);
    const RegionResult r2 = achievable_region(cfg, init);
    REQUIRE(r1.points.size() == 2000);
    for (size_t i = 0; i < r1.points.size(); ++i) {
      REQUIRE(r1.points[i].x == r2.points[i].x);
      REQUIRE(r1.points[i].y == r2.points[i].y);
      REQUIRE(r1.points[i].z == r2.points[i].z);
      REQUIRE(r1.points[i].norm() <= 1.0 + 1e-12);
    }
  }

  SECTION("every sampled channel passes membership and round-trip") {
    SplitMix64 outer(33);
    for (int t = 0; t < 50; ++t) {
      SplitMix64 rng = stream_for_index(17, static_cast<uint64_t>(t));
      const QubitChannel ch = to_kraus(sample_io(rng));
      const ChoiMatrix m = choi(ch);
      REQUIRE(io_membership(m));
      const DecompositionSolution sol = decompose_io(m);
      REQUIRE(channels_equal(ch, sol.kraus, 1e-9));
    }
  }

  SECTION("maximally mixed input stays inside the ball") {
    SamplerConfig cfg;
    cfg.seed = 6;
    cfg.count = 500;
    const RegionResult r = achievable_region(cfg, {0.0, 0.0, 0.0});
    for (const auto& p : r.points) REQUIRE(p.norm() <= 1.0 + 1e-12);
  }

  SECTION("out-of-ball initial vector is rejected") {
    SamplerConfig cfg;
    REQUIRE_THROWS_AS(achievable_region(cfg, {0.0, 0.0, 1.5}), ValidationError);
  }
}
