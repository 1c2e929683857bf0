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

/// Small dense complex matrix kernel. Everything in this toolkit lives in
/// dimension <= 9 (qutrit Choi matrices), so the implementation favours
/// bit-stable, dependency-free routines over asymptotic speed. The
/// eigensolver is a cyclic Jacobi iteration on the Hermitian input.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <vector>

#include "qio/errors.hpp"

namespace qio {

using Complex = std::complex<double>;

constexpr double kHermitianTol = 1e-9;  // absolute, on the max entry
constexpr double kRankTol = 1e-9;       // relative to the top eigenvalue
constexpr double kPsdTol = 1e-9;        // relative slack on the bottom eigenvalue
constexpr int kMaxDim = 9;

/// Dense row-major complex matrix, at most 9x9, all entries finite.
class CMatrix {
 public:
  CMatrix() = default;

  CMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    check_shape(rows, cols);
    data_.assign(static_cast<size_t>(rows) * cols, Complex(0.0, 0.0));
  }

  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
    check_shape(rows_, cols_);
    data_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != cols_)
        throw DimensionError("ragged initializer for CMatrix");
      data_.insert(data_.end(), r.begin(), r.end());
    }
    ensure_finite();
  }

  static CMatrix identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const Complex& operator()(int i, int j) const {
    return data_[static_cast<size_t>(i) * cols_ + j];
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  /// Conjugate transpose.
  CMatrix adjoint() const {
    CMatrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  /// Row-major vectorization (K00, K01, ..., K(d-1)(d-1)).
  std::vector<Complex> vec() const { return data_; }

  void ensure_finite() const {
    for (const auto& z : data_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw ValidationError("non-finite matrix entry");
  }

  friend CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b, "+");
    CMatrix out = a;
    for (size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
  }

  friend CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b, "-");
    CMatrix out = a;
    for (size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
  }

  friend CMatrix operator*(const Complex& s, const CMatrix& a) {
    CMatrix out = a;
    for (auto& z : out.data_) z *= s;
    return out;
  }

  friend CMatrix operator*(const CMatrix& a, const Complex& s) { return s * a; }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols_ != b.rows_)
      throw DimensionError("matmul shape mismatch: " + shape_str(a) + " * " + shape_str(b));
    CMatrix out(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex(0.0, 0.0)) continue;
        for (int j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

 private:
  static void check_shape(int rows, int cols) {
    if (rows <= 0 || cols <= 0 || rows > kMaxDim || cols > kMaxDim)
      throw DimensionError("matrix shape out of range (1.." +
                           std::to_string(kMaxDim) + ")");
  }

  static std::string shape_str(const CMatrix& m) {
    return std::to_string(m.rows_) + "x" + std::to_string(m.cols_);
  }

  static void require_same_shape(const CMatrix& a, const CMatrix& b, const char* op) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw DimensionError(std::string("shape mismatch for operator ") + op);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Complex> data_;
};

inline CMatrix adjoint(const CMatrix& a) { return a.adjoint(); }

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  return (a - b).max_abs();
}

inline double hermiticity_defect(const CMatrix& a) {
  return max_abs_diff(a, a.adjoint());
}

struct EigenResult {
  std::vector<double> values;  // descending
  CMatrix vectors;             // unitary, columns are eigenvectors
};

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Returns eigenvalues sorted descending with matching eigenvector columns.
/// The input must be Hermitian within `tol` (absolute, on the max entry).
inline EigenResult hermitian_eigen(const CMatrix& a, double tol = kHermitianTol) {
  if (!a.is_square()) throw DimensionError("hermitian_eigen needs a square matrix");
  a.ensure_finite();
  const int n = a.rows();
  if (hermiticity_defect(a) > tol) {
    std::ostringstream os;
    os << "matrix is not Hermitian within " << tol
       << " (defect " << hermiticity_defect(a) << ")";
    throw ValidationError(os.str());
  }

  // Symmetrize the tolerated defect away, then rotate.
  CMatrix m = 0.5 * (a + a.adjoint());
  CMatrix v = CMatrix::identity(n);
  const double scale = std::max(1.0, m.max_abs());
  const double stop = 1e-15 * scale;

  const int max_sweeps = 100;
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(m(p, q)));
    if (off <= stop) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex apq = m(p, q);
        const double h = std::abs(apq);
        if (h <= stop) continue;
        const double app = m(p, p).real();
        const double aqq = m(q, q).real();
        // Phase that makes the coupling real, then a real Jacobi angle.
        const Complex phase = apq / h;
        const double tau = (aqq - app) / (2.0 * h);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // U = diag(1, conj(phase)) * [[c, s], [-s, c]] acting on columns p,q.
        const Complex upp = c;
        const Complex upq = s;
        const Complex uqp = -s * std::conj(phase);
        const Complex uqq = c * std::conj(phase);
        for (int r = 0; r < n; ++r) {
          const Complex mrp = m(r, p), mrq = m(r, q);
          m(r, p) = mrp * upp + mrq * uqp;
          m(r, q) = mrp * upq + mrq * uqq;
        }
        for (int r = 0; r < n; ++r) {
          const Complex mpr = m(p, r), mqr = m(q, r);
          m(p, r) = std::conj(upp) * mpr + std::conj(uqp) * mqr;
          m(q, r) = std::conj(upq) * mpr + std::conj(uqq) * mqr;
        }
        for (int r = 0; r < n; ++r) {
          const Complex vrp = v(r, p), vrq = v(r, q);
          v(r, p) = vrp * upp + vrq * uqp;
          v(r, q) = vrp * upq + vrq * uqq;
        }
        m(p, q) = 0.0;
        m(q, p) = 0.0;
      }
    }
  }
  if (sweep == max_sweeps)
    throw ConstraintViolation("Jacobi eigensolver failed to converge");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return m(i, i).real() > m(j, j).real(); });

  EigenResult out;
  out.values.resize(n);
  out.vectors = CMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    out.values[j] = m(order[j], order[j]).real();
    for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

/// Number of eigenvalues above tol_rel * lambda_max. Anything with
/// lambda_max at or below 1e-14 counts as rank zero.
inline int numerical_rank(const CMatrix& a, double tol_rel = kRankTol) {
  const EigenResult eig = hermitian_eigen(a);
  const double lmax = eig.values.empty() ? 0.0 : eig.values.front();
  if (lmax <= 1e-14) return 0;
  int rank = 0;
  for (double l : eig.values)
    if (l > tol_rel * lmax) ++rank;
  return rank;
}

/// True iff the minimum eigenvalue is >= -tol * max(1, lambda_max).
inline bool is_psd(const CMatrix& a, double tol = kPsdTol) {
  const EigenResult eig = hermitian_eigen(a, std::max(tol, kHermitianTol));
  const double lmax = eig.values.empty() ? 0.0 : eig.values.front();
  const double lmin = eig.values.empty() ? 0.0 : eig.values.back();
  return lmin >= -tol * std::max(1.0, lmax);
}

}  // namespace qio
