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

/// Channel classification: membership in the incoherent / strictly
/// incoherent classes, Kraus and incoherent ranks, the two-operator
/// taxonomy, and a gallery of named reference channels.
///
/// Strict incoherence is a slot-support statement at the Choi level:
/// diagonal, antidiagonal and single-entry operators populate only the
/// (0,3) and (1,2) couplings, so a qubit channel is SIO exactly when
/// m01, m23, m02 and m13 all vanish. sio_decompose then peels the two
/// decoupled 2x2 blocks into a witness with exactly Kraus-rank many
/// operators.

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qio/decompose.hpp"

namespace qio {

inline bool is_sio_choi(const ChoiMatrix& m, double tol = kDecomposeTol) {
  if (m.dim() != 2) throw DimensionError("SIO structure test is defined for qubits");
  const double scale = std::max(1.0, m.matrix().max_abs());
  return std::abs(m(0, 1)) <= tol * scale && std::abs(m(2, 3)) <= tol * scale &&
         std::abs(m(0, 2)) <= tol * scale && std::abs(m(1, 3)) <= tol * scale;
}

inline bool is_sio_channel(const QubitChannel& ch, double tol = kDecomposeTol) {
  return is_sio_choi(choi(ch), tol);
}

/// Constructive strictly-incoherent witness for a structurally SIO Choi
/// matrix. The operator count equals the Kraus rank.
inline QubitChannel sio_decompose(const ChoiMatrix& m, double tol = kDecomposeTol) {
  if (!is_sio_choi(m, tol))
    throw ConstraintViolation("Choi matrix does not have SIO slot structure");
  const CMatrix t = 2.0 * m.matrix();
  ChoiEntries en;
  en.a = t(0, 0).real();
  en.b = t(1, 1).real();
  en.c = t(2, 2).real();
  en.d = t(3, 3).real();
  en.g = t(0, 3);
  en.f = t(1, 2);
  const double scale = std::max(1.0, t.max_abs());
  const auto blocks = detail::sio_blocks(en, 0.1 * tol * scale);
  std::vector<CMatrix> mats;
  for (const auto& blk : blocks) {
    KrausOperator op = rank1_to_kraus(blk);
    if (op.matrix.max_abs() > 0.0) mats.push_back(std::move(op.matrix));
  }
  QubitChannel out(std::move(mats));
  if (max_abs_diff(choi(out).matrix(), m.matrix()) > kRoundTripTol)
    throw ConstraintViolation("SIO witness failed the Choi reconstruction gate");
  return out;
}

enum class TwoKrausTag {
  kRow1Row1Sio,   // both operators row-1: mixable to strictly incoherent
  kRow2Row2Sio,   // both operators row-2: mirrored case
  kMixedNotSio,   // one row-1, one row-2, all four entries alive
  kDegenerate     // at least one single-entry/diagonal-type operator
};

inline const char* to_string(TwoKrausTag tag) {
  switch (tag) {
    case TwoKrausTag::kRow1Row1Sio: return "row1_row1_sio";
    case TwoKrausTag::kRow2Row2Sio: return "row2_row2_sio";
    case TwoKrausTag::kMixedNotSio: return "mixed_not_sio";
    case TwoKrausTag::kDegenerate: return "degenerate";
  }
  return "?";
}

struct TwoKrausClass {
  TwoKrausTag tag = TwoKrausTag::kDegenerate;
  std::optional<CMatrix> witness_unitary;  // mixes the pair into SIO form
  std::optional<double> theta;             // for the mixed family, in (0, pi/2)
  std::optional<double> phi;
};

/// Taxonomy of two-operator incoherent channels: the same-row pairs are
/// strictly incoherent after an explicit rotation, the mixed row pair is
/// the one genuinely non-SIO family and carries its (theta, phi)
/// parameters, everything touching a single-entry operator is already
/// strictly incoherent.
inline TwoKrausClass classify_two_kraus(const QubitChannel& ch) {
  std::vector<const KrausOperator*> live;
  for (const auto& op : ch.operators()) {
    if (!op.pattern) throw DimensionError("two-operator taxonomy is for qubits");
    if (op.pattern->tag == PatternTag::kZero) continue;
    if (op.pattern->tag == PatternTag::kNotIncoherent)
      throw ValidationError("operator is not incoherent");
    live.push_back(&op);
  }
  if (live.size() != 2)
    throw ValidationError("taxonomy needs exactly two nonzero operators");

  const PatternTag t0 = live[0]->pattern->tag;
  const PatternTag t1 = live[1]->pattern->tag;

  auto row_angle_witness = [&](int entry_row) -> TwoKrausClass {
    // phase-normalize on the leading column entry, then rotate
    const Complex a0 = live[0]->matrix(entry_row, 0);
    const Complex a1 = live[1]->matrix(entry_row, 0);
    const double theta = std::atan2(std::abs(a1), std::abs(a0));
    const double ct = std::cos(theta), st = std::sin(theta);
    const Complex ph0 = std::conj(a0) / std::abs(a0);
    const Complex ph1 = std::conj(a1) / std::abs(a1);
    CMatrix u{{ct * ph0, st * ph1}, {st * ph0, -ct * ph1}};
    TwoKrausClass out;
    out.tag = (entry_row == 0) ? TwoKrausTag::kRow1Row1Sio : TwoKrausTag::kRow2Row2Sio;
    out.witness_unitary = std::move(u);
    out.theta = theta;
    return out;
  };

  if (t0 == PatternTag::kRow1 && t1 == PatternTag::kRow1) return row_angle_witness(0);
  if (t0 == PatternTag::kRow2 && t1 == PatternTag::kRow2) return row_angle_witness(1);

  const bool mixed_rows = (t0 == PatternTag::kRow1 && t1 == PatternTag::kRow2) ||
                          (t0 == PatternTag::kRow2 && t1 == PatternTag::kRow1);
  if (mixed_rows) {
    const KrausOperator& first =
        (t0 == PatternTag::kRow1) ? *live[0] : *live[1];
    const Complex k00 = first.matrix(0, 0);
    const Complex k01 = first.matrix(0, 1);
    TwoKrausClass out;
    out.tag = TwoKrausTag::kMixedNotSio;
    out.theta = std::atan2(std::abs(k01), std::abs(k00));
    out.phi = std::arg(k01) - std::arg(k00);
    return out;
  }
  return {TwoKrausTag::kDegenerate, std::nullopt, std::nullopt, std::nullopt};
}

struct ChannelReport {
  bool is_valid_channel = false;
  std::optional<bool> is_io;
  std::optional<bool> is_sio;
  int kraus_rank = 0;
  std::optional<int> io_rank_upper;
  bool io_rank_certified = false;
  std::optional<int> sio_rank;
  bool all_operators_incoherent = false;
  std::optional<DecompositionSolution> decomposition;
};

/// Rank and membership summary. For qutrits only the Kraus rank and the
/// per-operator pattern check are populated.
inline ChannelReport report(const QubitChannel& ch) {
  ChannelReport out;
  out.is_valid_channel = true;
  out.all_operators_incoherent = ch.all_incoherent();
  const ChoiMatrix m = choi(ch);
  out.kraus_rank = numerical_rank(m.matrix());
  if (ch.dim() != 2) return out;

  out.is_io = io_membership(m);
  out.is_sio = is_sio_choi(m);
  if (*out.is_io) {
    out.decomposition = decompose_io(m);
    out.io_rank_upper = static_cast<int>(out.decomposition->kraus.size());
    out.io_rank_certified = (*out.io_rank_upper == out.kraus_rank);
  }
  if (*out.is_sio)
    out.sio_rank = static_cast<int>(sio_decompose(m).size());
  return out;
}

/// Named channels used across the test and documentation surface.
/// eq15 takes the (theta, phi) parameters of the mixed two-operator
/// family; the other names ignore them.
inline QubitChannel gallery(const std::string& name, double theta = 1.0,
                            double phi = 0.0) {
  const Complex h(0.5, 0.0);
  if (name == "eq14")
    return QubitChannel({CMatrix{{h, h}, {0.0, 0.0}}, CMatrix{{0.0, 0.0}, {h, -h}},
                         CMatrix{{h, 0.0}, {0.0, h}}, CMatrix{{0.0, h}, {h, 0.0}}});
  if (name == "eq17")
    return QubitChannel({CMatrix{{h, h}, {0.0, 0.0}}, CMatrix{{0.0, 0.0}, {h, -h}},
                         CMatrix{{h, 0.0}, {0.0, -h}}, CMatrix{{0.0, h}, {h, 0.0}}});
  if (name == "eq15") {
    const Complex eiph(std::cos(phi), std::sin(phi));
    return QubitChannel(
        {CMatrix{{std::cos(theta), std::sin(theta) * eiph}, {0.0, 0.0}},
         CMatrix{{0.0, 0.0}, {std::sin(theta), -std::cos(theta) * eiph}}});
  }
  if (name == "flattening") {
    const double s = std::sqrt(0.5);
    std::vector<CMatrix> ops;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        CMatrix k(2, 2);
        k(i, j) = s;
        ops.push_back(std::move(k));
      }
    return QubitChannel(std::move(ops));
  }
  if (name == "qutrit_permutations") {
    // the six 3x3 permutation matrices, normalized so the sum of
    // K^dagger K is the identity
    const double s = 1.0 / std::sqrt(6.0);
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                             {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    std::vector<CMatrix> ops;
    for (const auto& p : perms) {
      CMatrix k(3, 3);
      for (int col = 0; col < 3; ++col) k(p[col], col) = s;
      ops.push_back(std::move(k));
    }
    return QubitChannel(std::move(ops));
  }
  if (name == "identity") return QubitChannel({CMatrix::identity(2)});
  if (name == "dephasing")
    return QubitChannel(
        {CMatrix{{1.0, 0.0}, {0.0, 0.0}}, CMatrix{{0.0, 0.0}, {0.0, 1.0}}});
  throw ValidationError(
      "unknown gallery channel '" + name +
      "' (available: eq14, eq15, eq17, flattening, qutrit_permutations, "
      "identity, dephasing)");
}

}  // namespace qio
