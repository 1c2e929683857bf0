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

/// Parameter-level reductions of the five-operator canonical family:
/// conversion from the legacy parametrization, and the drop to four
/// operators when any canonical parameter vanishes.
///
/// Every reduction is a Kraus mixing (a unitary recombination of a
/// subset of operators that lives inside one incoherent pattern plane),
/// so the channel is preserved exactly; the result is re-verified
/// against the input Choi matrix before it is returned.

#pragma once

#include <numeric>

#include "qio/classify.hpp"

namespace qio {

namespace detail {

/// Hilbert-Schmidt Gram matrix of an operator subset.
inline CMatrix gram_matrix(const std::vector<CMatrix>& ops, const std::vector<size_t>& idx) {
  const size_t m = idx.size();
  CMatrix g(static_cast<int>(m), static_cast<int>(m));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      Complex dot = 0.0;
      const CMatrix& ki = ops[idx[i]];
      const CMatrix& kj = ops[idx[j]];
      for (int p = 0; p < ki.rows(); ++p)
        for (int q = 0; q < ki.cols(); ++q) dot += std::conj(ki(p, q)) * kj(p, q);
      g(static_cast<int>(i), static_cast<int>(j)) = dot;
    }
  return g;
}

/// Mixes the indexed subset by the transpose of its Gram eigenbasis.
/// The combinations inherit the Gram eigenvalues as squared
/// Hilbert-Schmidt norms, so null directions drop out; the rest of the
/// operator list is untouched. A linearly dependent subset therefore
/// shrinks by at least one operator while the channel stays fixed.
inline std::vector<CMatrix> mix_out_dependent(const std::vector<CMatrix>& ops,
                                              const std::vector<size_t>& idx,
                                              double drop_lambda) {
  const size_t m = idx.size();
  const auto eig = hermitian_eigen(gram_matrix(ops, idx));
  std::vector<CMatrix> mixed;
  const int d = ops.front().rows();
  for (size_t i = 0; i < m; ++i) {
    if (eig.values[i] <= drop_lambda) continue;
    CMatrix l(d, d);
    for (size_t j = 0; j < m; ++j)
      l = l + eig.vectors(static_cast<int>(j), static_cast<int>(i)) * ops[idx[j]];
    mixed.push_back(std::move(l));
  }
  std::vector<CMatrix> out;
  for (size_t i = 0; i < ops.size(); ++i)
    if (std::find(idx.begin(), idx.end(), i) == idx.end()) out.push_back(ops[i]);
  for (auto& l : mixed) out.push_back(std::move(l));
  return out;
}

/// Zeroes entries at or below the tolerance; the mixings confine such
/// dirt to magnitudes that keep the Choi matrix within its gate.
inline void clean_dirt(std::vector<CMatrix>& ops, double tol) {
  for (auto& k : ops)
    for (int i = 0; i < k.rows(); ++i)
      for (int j = 0; j < k.cols(); ++j)
        if (std::abs(k(i, j)) <= tol) k(i, j) = 0.0;
}

}  // namespace detail

/// Re-parametrizes the legacy five-operator form. When the second
/// operator carries column weight (a2 > 0) the map is a direct renaming
/// with r = a1/a2; otherwise the channel is strictly incoherent and the
/// record is rebuilt from its canonical SIO witness with r = 0.
inline CanonicalIO5 legacy_to_five(const LegacyIO5& form, double tol = kFormTol) {
  form.validate(tol);
  if (form.a[1] > tol) {
    CanonicalIO5 out;
    out.r = form.a[0] / form.a[1];
    out.alpha = {form.a[1], form.a[2], form.a[3], form.a[4]};
    out.beta = {form.b[0], form.b[2], form.b[3]};
    out.validate(1e-8);
    return out;
  }

  // a2 = 0 forces a1 b1 = 0: no operator couples the two slots of any
  // column pair, the channel is SIO.
  const QubitChannel ch = to_kraus(form);
  const QubitChannel witness = sio_decompose(choi(ch), tol);
  CanonicalIO5 out;  // r = 0; operators land on the slots the zero-r family offers
  std::array<bool, 5> used{};
  for (const auto& op : witness.operators()) {
    const auto& k = op.matrix;
    const bool s0 = std::abs(k(0, 0)) > 0.0, s1 = std::abs(k(0, 1)) > 0.0;
    const bool s2 = std::abs(k(1, 0)) > 0.0, s3 = std::abs(k(1, 1)) > 0.0;
    int target;
    if (s0 && s3) target = 2;        // diagonal pair -> (alpha2, beta2)
    else if (s1 && s2) target = 3;   // antidiagonal pair -> (beta3, alpha3)
    else if (s0) target = 4;         // single at K00 -> alpha4
    else if (s3) target = 2;         // single at K11 -> (0, beta2)
    else if (s1) target = 0;         // single at K01 -> beta1 (r = 0)
    else target = 1;                 // single at K10 -> alpha1
    if (used[target])
      throw ConstraintViolation("SIO witness does not fit the zero-r family");
    used[target] = true;
    switch (target) {
      case 0: out.beta[0] = k(0, 1); break;
      case 1: out.alpha[0] = k(1, 0).real(); break;
      case 2:
        out.alpha[1] = k(0, 0).real();
        out.beta[1] = k(1, 1);
        break;
      case 3:
        out.beta[2] = k(0, 1);
        out.alpha[2] = k(1, 0).real();
        break;
      case 4: out.alpha[3] = k(0, 0).real(); break;
    }
  }
  out.validate(1e-8);
  if (max_abs_diff(choi(to_kraus(out)).matrix(), choi(ch).matrix()) > 1e-10)
    throw ConstraintViolation("legacy conversion failed the Choi gate");
  return out;
}

/// Four incoherent operators for a five-operator form with an
/// effectively vanishing parameter. Dispatch: drop the fifth operator
/// outright (alpha4); strictly incoherent shortcut (the row couplings
/// die with r, alpha1 or beta1); a two- or three-way mixing inside one
/// pattern plane (beta2, alpha3); a pre-rotation that
/// concentrates the row pairs, then a three-way mixing (alpha2, beta3).
inline QubitChannel reduce_observation1(const CanonicalIO5& form, double tol = 1e-9) {
  form.validate(1e-8);
  const double r = form.r;
  const double a1 = form.alpha[0], a2 = form.alpha[1], a3 = form.alpha[2],
               a4 = form.alpha[3];
  const Complex b1 = form.beta[0], b2 = form.beta[1], b3 = form.beta[2];

  std::vector<CMatrix> ops = {CMatrix{{r * a1, b1}, {0.0, 0.0}},
                              CMatrix{{0.0, 0.0}, {a1, -r * b1}},
                              CMatrix{{a2, 0.0}, {0.0, b2}},
                              CMatrix{{0.0, b3}, {a3, 0.0}},
                              CMatrix{{a4, 0.0}, {0.0, 0.0}}};
  const ChoiMatrix target = choi(QubitChannel(ops));
  const double drop_lambda = std::max(100.0 * tol * tol, 1e-14);

  std::vector<CMatrix> reduced;
  if (a4 <= tol) {
    ops.pop_back();
    reduced = std::move(ops);
  } else if (a1 <= tol || std::abs(b1) <= tol || r * a1 <= tol ||
             r * std::abs(b1) <= tol) {
    return sio_decompose(target, tol);
  } else if (std::abs(b2) <= tol) {
    // operators 3 and 5 are parallel in the diagonal plane
    reduced = detail::mix_out_dependent(ops, {2, 4}, drop_lambda);
  } else if (a3 <= tol) {
    // operators 1, 4, 5 squeeze into the two-dimensional row-1 plane
    reduced = detail::mix_out_dependent(ops, {0, 3, 4}, drop_lambda);
  } else if (a2 <= tol) {
    // concentrate (1,5) and (2,3), then three operators share the
    // antidiagonal plane
    const double nu = std::sqrt(r * r * a1 * a1 + a4 * a4);
    const CMatrix keep_u = (1.0 / nu) * (r * a1 * ops[0] + a4 * ops[4]);
    const CMatrix single_u = (1.0 / nu) * (-a4 * ops[0] + r * a1 * ops[4]);
    const double nv = std::sqrt(r * r * std::norm(b1) + std::norm(b2));
    const CMatrix keep_v =
        (1.0 / nv) * (r * std::conj(b1) * ops[1] - std::conj(b2) * ops[2]);
    const CMatrix single_v = (1.0 / nv) * (b2 * ops[1] + r * b1 * ops[2]);
    std::vector<CMatrix> staged = {keep_u, keep_v, single_u, single_v, ops[3]};
    reduced = detail::mix_out_dependent(staged, {2, 3, 4}, drop_lambda);
  } else if (std::abs(b3) <= tol) {
    // concentrate (2,4) into a row-2 keeper plus a K11 single, then
    // three operators share the diagonal plane
    const double nw = std::sqrt(a1 * a1 + a3 * a3);
    const CMatrix keep_w = (1.0 / nw) * (a1 * ops[1] + a3 * ops[3]);
    const CMatrix single_w = (1.0 / nw) * (-a3 * ops[1] + a1 * ops[3]);
    std::vector<CMatrix> staged = {ops[0], keep_w, ops[2], single_w, ops[4]};
    reduced = detail::mix_out_dependent(staged, {2, 3, 4}, drop_lambda);
  } else {
    throw ValidationError(
        "no canonical parameter lies below the tolerance; use the Choi-level "
        "decomposition instead");
  }

  detail::clean_dirt(reduced, tol);
  std::vector<CMatrix> live;
  for (auto& k : reduced)
    if (k.max_abs() > 0.0) live.push_back(std::move(k));
  if (live.size() > 4)
    throw ConstraintViolation("reduction left more than four operators");
  QubitChannel out(std::move(live));
  if (!out.all_incoherent())
    throw ConstraintViolation("reduction produced a non-incoherent operator");
  if (max_abs_diff(choi(out).matrix(), target.matrix()) > 1e-9)
    throw ConstraintViolation("reduction failed the Choi gate");
  return out;
}

}  // namespace qio
