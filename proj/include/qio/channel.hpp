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

/// Kraus operators with incoherence-pattern classification, validated
/// channels, Choi matrices and Bloch-vector conversions.
///
/// Conventions, fixed throughout the library:
///   * vec(K) is the row-major vectorization (K00, K01, K10, K11).
///   * The Choi matrix is M = (1/d) sum_i vec(K_i) vec(K_i)^dagger.
/// For a qubit the slot order is therefore (K00, K01, K10, K11), and
/// completeness reads m00+m22 = m11+m33 = 1/2, m01 + m23 = 0.

#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qio/complex_matrix.hpp"
#include "qio/errors.hpp"

namespace qio {

constexpr double kPatternTol = 1e-9;           // relative to the max entry
constexpr double kCompletenessGate = 1e-8;     // hard validity gate
constexpr double kChoiValidationTol = 1e-8;    // matches the channel gate

enum class PatternTag {
  kRow1,          // support in {K00, K01}, both present
  kRow2,          // support in {K10, K11}, both present
  kDiagonal,      // support in {K00, K11}, both present
  kAntidiagonal,  // support in {K01, K10}, both present
  kSingleEntry,   // exactly one entry present
  kZero,
  kNotIncoherent  // some column carries two entries
};

struct IncoherencePattern {
  PatternTag tag = PatternTag::kZero;
  // Set for kSingleEntry: position of the one surviving entry.
  int row = -1;
  int col = -1;
};

inline const char* to_string(PatternTag tag) {
  switch (tag) {
    case PatternTag::kRow1: return "row1";
    case PatternTag::kRow2: return "row2";
    case PatternTag::kDiagonal: return "diagonal";
    case PatternTag::kAntidiagonal: return "antidiagonal";
    case PatternTag::kSingleEntry: return "single_entry";
    case PatternTag::kZero: return "zero";
    case PatternTag::kNotIncoherent: return "not_incoherent";
  }
  return "?";
}

/// Pattern of a 2x2 operator. An entry counts as nonzero when its modulus
/// exceeds tol times the largest modulus in the operator.
inline IncoherencePattern classify_pattern(const CMatrix& k, double tol = kPatternTol) {
  if (k.rows() != 2 || k.cols() != 2)
    throw DimensionError("classify_pattern expects a 2x2 operator");
  const double scale = k.max_abs();
  if (scale == 0.0) return {PatternTag::kZero};
  const double thr = tol * scale;
  bool nz[2][2];
  int count = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      nz[i][j] = std::abs(k(i, j)) > thr;
      count += nz[i][j];
    }
  if (count == 0) return {PatternTag::kZero};
  if ((nz[0][0] && nz[1][0]) || (nz[0][1] && nz[1][1]))
    return {PatternTag::kNotIncoherent};
  if (count == 1) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (nz[i][j]) return {PatternTag::kSingleEntry, i, j};
  }
  // Two entries, one per column.
  if (nz[0][0] && nz[0][1]) return {PatternTag::kRow1};
  if (nz[1][0] && nz[1][1]) return {PatternTag::kRow2};
  if (nz[0][0] && nz[1][1]) return {PatternTag::kDiagonal};
  return {PatternTag::kAntidiagonal};
}

/// Column test for any dimension: incoherent iff every column holds at
/// most one entry above tolerance.
inline bool is_incoherent(const CMatrix& k, double tol = kPatternTol) {
  const double thr = tol * std::max(k.max_abs(), 1e-300);
  for (int j = 0; j < k.cols(); ++j) {
    int hits = 0;
    for (int i = 0; i < k.rows(); ++i)
      if (std::abs(k(i, j)) > thr) ++hits;
    if (hits > 1) return false;
  }
  return true;
}

inline bool is_sio_compatible(PatternTag tag) {
  switch (tag) {
    case PatternTag::kDiagonal:
    case PatternTag::kAntidiagonal:
    case PatternTag::kSingleEntry:
    case PatternTag::kZero:
      return true;
    default:
      return false;
  }
}

struct KrausOperator {
  CMatrix matrix;
  // Populated for qubit operators only.
  std::optional<IncoherencePattern> pattern;
  double tolerance = kPatternTol;

  KrausOperator() = default;
  explicit KrausOperator(CMatrix m, double tol = kPatternTol)
      : matrix(std::move(m)), tolerance(tol) {
    matrix.ensure_finite();
    if (matrix.rows() == 2 && matrix.cols() == 2)
      pattern = classify_pattern(matrix, tol);
  }
};

/// A completeness-validated channel on dimension 2 or 3. Construction
/// rejects operator lists whose completeness residual exceeds 1e-8.
class QubitChannel {
 public:
  explicit QubitChannel(std::vector<CMatrix> kraus, double pattern_tol = kPatternTol) {
    if (kraus.empty()) throw ValidationError("channel needs at least one Kraus operator");
    const int d = kraus.front().rows();
    if ((d != 2 && d != 3) || kraus.front().cols() != d)
      throw DimensionError("Kraus operators must be 2x2 or 3x3");
    CMatrix sum(d, d);
    for (const auto& k : kraus) {
      if (k.rows() != d || k.cols() != d)
        throw DimensionError("Kraus operators must share one dimension");
      sum = sum + k.adjoint() * k;
    }
    residual_ = max_abs_diff(sum, CMatrix::identity(d));
    if (residual_ > kCompletenessGate) {
      std::ostringstream os;
      os << "completeness residual " << residual_ << " exceeds " << kCompletenessGate;
      throw ValidationError(os.str());
    }
    dim_ = d;
    ops_.reserve(kraus.size());
    for (auto& k : kraus) ops_.emplace_back(std::move(k), pattern_tol);
  }

  int dim() const { return dim_; }
  size_t size() const { return ops_.size(); }
  double completeness_residual() const { return residual_; }
  const std::vector<KrausOperator>& operators() const { return ops_; }
  const KrausOperator& operator[](size_t i) const { return ops_[i]; }

  size_t nonzero_count() const {
    size_t n = 0;
    for (const auto& op : ops_)
      if (op.matrix.max_abs() > 0.0 &&
          !(op.pattern && op.pattern->tag == PatternTag::kZero))
        ++n;
    return n;
  }

  bool all_incoherent() const {
    for (const auto& op : ops_) {
      if (op.pattern) {
        if (op.pattern->tag == PatternTag::kNotIncoherent) return false;
      } else if (!is_incoherent(op.matrix)) {
        return false;
      }
    }
    return true;
  }

 private:
  int dim_ = 2;
  double residual_ = 0.0;
  std::vector<KrausOperator> ops_;
};

/// Validated Choi matrix: Hermitian, PSD, unit trace, completeness
/// constraints on the slot sums.
class ChoiMatrix {
 public:
  static ChoiMatrix from_matrix(CMatrix m, double tol = kChoiValidationTol) {
    ChoiMatrix out;
    const int n = m.rows();
    if ((n != 4 && n != 9) || m.cols() != n)
      throw DimensionError("Choi matrix must be 4x4 or 9x9");
    m.ensure_finite();
    if (hermiticity_defect(m) > tol)
      throw ValidationError("Choi matrix is not Hermitian");
    if (!is_psd(m, tol)) throw ValidationError("Choi matrix is not PSD");
    if (std::abs(m.trace() - Complex(1.0, 0.0)) > tol)
      throw ValidationError("Choi matrix trace differs from 1");
    if (n == 4) {
      const double half = 0.5;
      if (std::abs(m(0, 0).real() + m(2, 2).real() - half) > tol ||
          std::abs(m(1, 1).real() + m(3, 3).real() - half) > tol ||
          std::abs(m(0, 1) + m(2, 3)) > tol)
        throw ValidationError("Choi matrix violates completeness constraints");
    }
    out.m_ = std::move(m);
    out.dim_ = (n == 4) ? 2 : 3;
    return out;
  }

  const CMatrix& matrix() const { return m_; }
  int dim() const { return dim_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

 private:
  CMatrix m_;
  int dim_ = 2;
};

inline ChoiMatrix choi(const QubitChannel& ch) {
  const int d = ch.dim();
  const int n = d * d;
  CMatrix m(n, n);
  for (const auto& op : ch.operators()) {
    const std::vector<Complex> v = op.matrix.vec();
    for (int i = 0; i < n; ++i) {
      if (v[i] == Complex(0.0, 0.0)) continue;
      for (int j = 0; j < n; ++j) m(i, j) += v[i] * std::conj(v[j]);
    }
  }
  const double inv = 1.0 / d;
  m = inv * m;
  return ChoiMatrix::from_matrix(std::move(m));
}

/// Two Kraus lists describe one channel iff their Choi matrices agree.
inline bool channels_equal(const QubitChannel& ch1, const QubitChannel& ch2,
                           double tol = 1e-10) {
  if (ch1.dim() != ch2.dim())
    throw DimensionError("channels of different dimension are never compared");
  return max_abs_diff(choi(ch1).matrix(), choi(ch2).matrix()) <= tol;
}

inline std::vector<KrausOperator> pad_with_zeros(std::vector<KrausOperator> ops, size_t m) {
  const int d = ops.empty() ? 2 : ops.front().matrix.rows();
  while (ops.size() < m) ops.emplace_back(CMatrix(d, d));
  return ops;
}

/// L_i = sum_j U_ij K_j for a unitary U; the channel is unchanged.
inline std::vector<KrausOperator> mix_kraus(const CMatrix& u,
                                            const std::vector<KrausOperator>& ops,
                                            double unitary_tol = 1e-9) {
  if (!u.is_square() || static_cast<size_t>(u.rows()) != ops.size())
    throw DimensionError("mixing matrix must be m x m with m = number of operators");
  if (max_abs_diff(u * u.adjoint(), CMatrix::identity(u.rows())) > unitary_tol)
    throw ValidationError("mixing matrix is not unitary");
  const int d = ops.front().matrix.rows();
  std::vector<KrausOperator> out;
  out.reserve(ops.size());
  for (int i = 0; i < u.rows(); ++i) {
    CMatrix l(d, d);
    for (int j = 0; j < u.cols(); ++j) {
      const Complex w = u(i, j);
      if (w == Complex(0.0, 0.0)) continue;
      l = l + w * ops[j].matrix;
    }
    out.emplace_back(std::move(l));
  }
  return out;
}

inline void require_density_matrix(const CMatrix& rho, double tol = 1e-9) {
  if (!rho.is_square()) throw ValidationError("density matrix must be square");
  if (hermiticity_defect(rho) > tol)
    throw ValidationError("density matrix is not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > tol)
    throw ValidationError("density matrix trace differs from 1");
  if (!is_psd(rho, tol)) throw ValidationError("density matrix is not PSD");
}

/// rho -> sum_i K_i rho K_i^dagger.
inline CMatrix apply(const QubitChannel& ch, const CMatrix& rho) {
  require_density_matrix(rho);
  if (rho.rows() != ch.dim()) throw DimensionError("state dimension mismatch");
  CMatrix out(ch.dim(), ch.dim());
  for (const auto& op : ch.operators())
    out = out + op.matrix * rho * op.matrix.adjoint();
  return out;
}

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline CMatrix bloch_to_rho(const BlochVector& b) {
  if (b.norm() > 1.0 + 1e-12)
    throw ValidationError("Bloch vector lies outside the unit ball");
  return CMatrix{{Complex(0.5 * (1.0 + b.z), 0.0), Complex(0.5 * b.x, -0.5 * b.y)},
                 {Complex(0.5 * b.x, 0.5 * b.y), Complex(0.5 * (1.0 - b.z), 0.0)}};
}

inline BlochVector rho_to_bloch(const CMatrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2)
    throw DimensionError("Bloch coordinates exist for qubits only");
  return {2.0 * rho(1, 0).real(), 2.0 * rho(1, 0).imag(),
          rho(0, 0).real() - rho(1, 1).real()};
}

}  // namespace qio
