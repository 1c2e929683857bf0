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

#include "qio/classify.hpp"
#include "qio/sampler.hpp"
#include "test_helpers.hpp"

using namespace qio;

namespace {

CanonicalSIO4 random_sio4(SplitMix64& rng) {
  CanonicalSIO4 form;
  double an = 0.0;
  for (double& v : form.a) {
    v = rng.next_double();
    an += v * v;
  }
  an = std::sqrt(an);
  for (double& v : form.a) v /= an;
  double bn = 0.0;
  for (Complex& v : form.b) {
    v = test::random_complex(rng, 2.0);
    bn += std::norm(v);
  }
  bn = std::sqrt(bn);
  for (Complex& v : form.b) v = v * (1.0 / bn);
  return form;
}

}  // namespace

TEST_CASE("is_sio_channel") {
  REQUIRE_FALSE(is_sio_channel(gallery("eq14")));
  REQUIRE(is_sio_channel(gallery("dephasing")));
  REQUIRE(is_sio_channel(gallery("identity")));

  SECTION("eq14 has m01 = 1/8") {
    const ChoiMatrix m = choi(gallery("eq14"));
    REQUIRE(m(0, 1) == Complex(0.125, 0.0));
  }

  SECTION("permutation-phase unitary channels are SIO") {
    SplitMix64 rng(21);
    for (int t = 0; t < 30; ++t) {
      const QubitChannel u({test::random_permutation_phase_unitary(rng, 2)});
      REQUIRE(is_sio_channel(u));
      REQUIRE(io_membership(choi(u)));
    }
  }

  SECTION("SIO implies IO membership") {
    SplitMix64 rng(22);
    for (int t = 0; t < 50; ++t) {
      const QubitChannel ch = to_kraus(random_sio4(rng));
      REQUIRE(is_sio_channel(ch));
      REQUIRE(io_membership(choi(ch)));
    }
  }
}

TEST_CASE("sio_decompose") {
  SECTION("identity gives one operator") {
    const QubitChannel out = sio_decompose(choi(gallery("identity")));
    REQUIRE(out.size() == 1);
    REQUIRE(max_abs_diff(out[0].matrix, CMatrix::identity(2)) < 1e-12);
  }

  SECTION("generic SIO form: four operators matching the canonical split") {
    // a1 = b1 = 1/sqrt(2) scaled alongside generic a2..a4, b2
    CanonicalSIO4 form;
    form.a = {0.5, 0.4, std::sqrt(1.0 - 0.25 - 0.16 - 0.09), 0.3};
    form.b = {Complex(0.6, 0.2), Complex(0.5, -0.1)};
    const double bn = std::sqrt(std::norm(form.b[0]) + std::norm(form.b[1]));
    form.b[0] = form.b[0] * (1.0 / bn);
    form.b[1] = form.b[1] * (1.0 / bn);
    const QubitChannel ch = to_kraus(form);
    const QubitChannel out = sio_decompose(choi(ch));
    REQUIRE(out.size() == 4);
    REQUIRE(channels_equal(ch, out, 1e-10));
    for (const auto& op : out.operators())
      REQUIRE(is_sio_compatible(op.pattern->tag));
  }

  SECTION("operator count equals Kraus rank on random SIO draws") {
    SplitMix64 rng(23);
    for (int t = 0; t < 100; ++t) {
      const QubitChannel ch = to_kraus(random_sio4(rng));
      const ChoiMatrix m = choi(ch);
      const QubitChannel out = sio_decompose(m);
      REQUIRE(static_cast<int>(out.size()) == numerical_rank(m.matrix()));
      REQUIRE(channels_equal(ch, out, 1e-9));
    }
  }

  SECTION("rank-deficient SIO blocks") {
    // X block rank one: a1, b1 only; Y block rank one: a2, b2 only
    CanonicalSIO4 form;
    form.a = {0.6, 0.8, 0.0, 0.0};
    form.b = {Complex(0.8, 0.0), Complex(0.0, 0.6)};
    const QubitChannel ch = to_kraus(form);
    const ChoiMatrix m = choi(ch);
    const QubitChannel out = sio_decompose(m);
    REQUIRE(static_cast<int>(out.size()) == numerical_rank(m.matrix()));
    REQUIRE(out.size() == 2);
    REQUIRE(channels_equal(ch, out, 1e-10));
  }

  SECTION("non-SIO structure is rejected") {
    REQUIRE_THROWS_AS(sio_decompose(choi(gallery("eq14"))), ConstraintViolation);
  }
}

TEST_CASE("classify_two_kraus") {
  SECTION("the mixed family recovers theta and phi") {
    const double theta = 3.14159265358979 / 3.0, phi = 0.7;
    const TwoKrausClass cls = classify_two_kraus(gallery("eq15", theta, phi));
    REQUIRE(cls.tag == TwoKrausTag::kMixedNotSio);
    REQUIRE(cls.theta.value() == Catch::Approx(theta).margin(1e-10));
    REQUIRE(cls.phi.value() == Catch::Approx(phi).margin(1e-10));
    REQUIRE_FALSE(is_sio_channel(gallery("eq15", theta, phi)));
  }

  SECTION("row1-row1 family carries a verified witness") {
    SplitMix64 rng(24);
    for (int t = 0; t < 40; ++t) {
      const double th = rng.uniform(0.2, 1.3);
      const double ph = rng.uniform(0.0, 6.28);
      const double ch0 = rng.uniform(0.0, 6.28);  // random operator phases
      const double ch1 = rng.uniform(0.0, 6.28);
      const Complex e0(std::cos(ch0), std::sin(ch0));
      const Complex e1(std::cos(ch1), std::sin(ch1));
      const Complex eiph(std::cos(ph), std::sin(ph));
      const QubitChannel ch(
          {e0 * CMatrix{{std::cos(th), std::sin(th) * eiph}, {0.0, 0.0}},
           e1 * CMatrix{{std::sin(th), -std::cos(th) * eiph}, {0.0, 0.0}}});
      const TwoKrausClass cls = classify_two_kraus(ch);
      REQUIRE(cls.tag == TwoKrausTag::kRow1Row1Sio);
      REQUIRE(is_sio_channel(ch));

      // witness check: Choi preserved, every output pattern SIO-compatible
      const auto mixed = mix_kraus(cls.witness_unitary.value(), ch.operators());
      std::vector<CMatrix> mats;
      for (const auto& op : mixed) mats.push_back(op.matrix);
      const QubitChannel after(std::move(mats));
      REQUIRE(channels_equal(ch, after, 1e-10));
      for (const auto& op : after.operators())
        REQUIRE(is_sio_compatible(op.pattern->tag));
    }
  }

  SECTION("row2-row2 family carries a verified witness") {
    SplitMix64 rng(25);
    for (int t = 0; t < 40; ++t) {
      const double th = rng.uniform(0.2, 1.3);
      const double ph = rng.uniform(0.0, 6.28);
      const Complex eiph(std::cos(ph), std::sin(ph));
      const QubitChannel ch(
          {CMatrix{{0.0, 0.0}, {std::cos(th), std::sin(th) * eiph}},
           CMatrix{{0.0, 0.0}, {std::sin(th), -std::cos(th) * eiph}}});
      const TwoKrausClass cls = classify_two_kraus(ch);
      REQUIRE(cls.tag == TwoKrausTag::kRow2Row2Sio);
      const auto mixed = mix_kraus(cls.witness_unitary.value(), ch.operators());
      std::vector<CMatrix> mats;
      for (const auto& op : mixed) mats.push_back(op.matrix);
      const QubitChannel after(std::move(mats));
      REQUIRE(channels_equal(ch, after, 1e-10));
      for (const auto& op : after.operators())
        REQUIRE(is_sio_compatible(op.pattern->tag));
    }
  }

  SECTION("single-entry pairs are degenerate") {
    REQUIRE(classify_two_kraus(gallery("dephasing")).tag == TwoKrausTag::kDegenerate);
  }

  SECTION("cross-consistency with the structural SIO test") {
    SplitMix64 rng(26);
    for (int t = 0; t < 30; ++t) {
      const double th = rng.uniform(0.2, 1.3);
      const double ph = rng.uniform(0.0, 6.28);
      const QubitChannel mixed = gallery("eq15", th, ph);
      REQUIRE(classify_two_kraus(mixed).tag == TwoKrausTag::kMixedNotSio);
      REQUIRE_FALSE(is_sio_channel(mixed));
    }
  }

  SECTION("rejects non-incoherent pairs and wrong counts") {
    const double s = std::sqrt(0.5);
    REQUIRE_THROWS_AS(classify_two_kraus(QubitChannel({CMatrix{{s, s}, {s, -s}}})),
                      ValidationError);
    REQUIRE_THROWS_AS(classify_two_kraus(gallery("eq14")), ValidationError);
  }
}

TEST_CASE("report") {
  SECTION("eq17: Kraus rank 3, four incoherent operators, not certified") {
    const ChannelReport rep = report(gallery("eq17"));
    REQUIRE(rep.kraus_rank == 3);
    REQUIRE(rep.is_io.value());
    REQUIRE_FALSE(rep.is_sio.value());
    REQUIRE(rep.io_rank_upper.value() == 4);
    REQUIRE_FALSE(rep.io_rank_certified);
    REQUIRE_FALSE(rep.sio_rank.has_value());
  }

  SECTION("eq14: rank four, certified") {
    const ChannelReport rep = report(gallery("eq14"));
    REQUIRE(rep.kraus_rank == 4);
    REQUIRE(rep.is_io.value());
    REQUIRE_FALSE(rep.is_sio.value());
    REQUIRE(rep.io_rank_upper.value() == 4);
    REQUIRE(rep.io_rank_certified);
  }

  SECTION("flattening channel: rank four, certified") {
    const ChannelReport rep = report(gallery("flattening"));
    REQUIRE(rep.kraus_rank == 4);
    REQUIRE(rep.io_rank_upper.value() == 4);
    REQUIRE(rep.io_rank_certified);
    REQUIRE(rep.is_sio.value());
    REQUIRE(rep.sio_rank.value() == 4);
  }

  SECTION("qutrit permutation channel: Kraus rank five") {
    const ChannelReport rep = report(gallery("qutrit_permutations"));
    REQUIRE(rep.kraus_rank == 5);
    REQUIRE(rep.all_operators_incoherent);
    REQUIRE_FALSE(rep.is_io.has_value());
  }

  SECTION("unitary channels: IO iff SIO (permutation-phase case)") {
    SplitMix64 rng(27);
    for (int t = 0; t < 20; ++t) {
      const ChannelReport rep =
          report(QubitChannel({test::random_permutation_phase_unitary(rng, 2)}));
      REQUIRE(rep.kraus_rank == 1);
      REQUIRE(rep.is_io.value());
      REQUIRE(rep.is_sio.value());
      REQUIRE(rep.sio_rank.value() == 1);
      REQUIRE(rep.io_rank_certified);
    }
  }

  SECTION("dense unitary channel: not IO") {
    const ChannelReport rep = report(QubitChannel(
        {CMatrix{{std::sqrt(0.5), std::sqrt(0.5)}, {std::sqrt(0.5), -std::sqrt(0.5)}}}));
    REQUIRE_FALSE(rep.is_io.value());
    REQUIRE_FALSE(rep.io_rank_upper.has_value());
    REQUIRE_FALSE(rep.all_operators_incoherent);
  }
}

TEST_CASE("gallery") {
  REQUIRE(gallery("eq14").size() == 4);
  REQUIRE(gallery("eq17").size() == 4);
  REQUIRE(gallery("flattening").size() == 4);
  REQUIRE(gallery("qutrit_permutations").size() == 6);
  REQUIRE(gallery("qutrit_permutations").dim() == 3);
  REQUIRE(gallery("identity").size() == 1);
  REQUIRE_THROWS_AS(gallery("nonsense"), ValidationError);

  SECTION("eq14 entries are exactly the half-magnitude pattern") {
    const QubitChannel ch = gallery("eq14");
    REQUIRE(ch[0].matrix(0, 0) == Complex(0.5, 0.0));
    REQUIRE(ch[1].matrix(1, 1) == Complex(-0.5, 0.0));
    REQUIRE(ch[2].matrix(1, 1) == Complex(0.5, 0.0));
    REQUIRE(ch[3].matrix(0, 1) == Complex(0.5, 0.0));
  }

  SECTION("eq17 differs from eq14 in the third operator's sign") {
    REQUIRE(gallery("eq17")[2].matrix(1, 1) == Complex(-0.5, 0.0));
  }
}
