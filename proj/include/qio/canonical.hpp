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

/// Canonical parameter records for incoherent qubit channels and their
/// expansion into Kraus lists.
///
/// Three families cover the toolkit:
///   * CanonicalIO4 — the optimal four-operator form
///       { [[r a1, b1],[0,0]], [[0,0],[a1,-r b1]], [[a2,0],[0,b2]],
///         [[0,b3],[a3,0]] }
///     with a2^2 + a3^2 + (r^2+1) a1^2 = |b2|^2 + |b3|^2 + (r^2+1)|b1|^2 = 1.
///   * CanonicalIO5 — the same with one extra single-entry operator
///     [[a4,0],[0,0]] and the normalization extended by a4^2.
///   * CanonicalSIO4 — the strictly-incoherent form
///       { [[a1,0],[0,b1]], [[0,b2],[a2,0]], [[a3,0],[0,0]], [[0,0],[a4,0]] }.
/// LegacyIO5 is the five-operator predecessor parametrization
///       { [[a1,b1],[0,0]], [[0,0],[a2,b2]], [[a3,0],[0,b3]],
///         [[0,b4],[a4,0]], [[a5,0],[0,0]] }
/// with sum a_i^2 = sum |b_j|^2 = 1 and a1 b1 + a2 b2 = 0.

#pragma once

#include <array>
#include <cmath>
#include <sstream>
#include <variant>
#include <vector>

#include "qio/channel.hpp"

namespace qio {

constexpr double kFormTol = 1e-9;

namespace detail {

inline void require_nonnegative(std::initializer_list<double> vals, const char* what) {
  for (double v : vals)
    if (!(v >= 0.0)) throw ValidationError(std::string(what) + " must be nonnegative");
}

inline void require_normalized(double value, const char* what, double tol = kFormTol) {
  if (std::abs(value - 1.0) > tol) {
    std::ostringstream os;
    os << what << " normalization off by " << std::abs(value - 1.0);
    throw ValidationError(os.str());
  }
}

}  // namespace detail

struct CanonicalIO4 {
  double r = 0.0;
  std::array<double, 3> alpha{};   // a1, a2, a3 >= 0
  std::array<Complex, 3> beta{};   // b1, b2, b3

  void validate(double tol = kFormTol) const {
    detail::require_nonnegative({r, alpha[0], alpha[1], alpha[2]}, "r, alpha");
    const double rr = r * r + 1.0;
    detail::require_normalized(
        alpha[1] * alpha[1] + alpha[2] * alpha[2] + rr * alpha[0] * alpha[0],
        "alpha side of the four-operator form", tol);
    detail::require_normalized(
        std::norm(beta[1]) + std::norm(beta[2]) + rr * std::norm(beta[0]),
        "beta side of the four-operator form", tol);
  }
};

struct CanonicalIO5 {
  double r = 0.0;
  std::array<double, 4> alpha{};   // a1..a4 >= 0
  std::array<Complex, 3> beta{};   // b1..b3

  void validate(double tol = kFormTol) const {
    detail::require_nonnegative({r, alpha[0], alpha[1], alpha[2], alpha[3]}, "r, alpha");
    const double rr = r * r + 1.0;
    detail::require_normalized(alpha[1] * alpha[1] + alpha[2] * alpha[2] +
                                   alpha[3] * alpha[3] + rr * alpha[0] * alpha[0],
                               "alpha side of the five-operator form", tol);
    detail::require_normalized(
        std::norm(beta[1]) + std::norm(beta[2]) + rr * std::norm(beta[0]),
        "beta side of the five-operator form", tol);
  }
};

struct CanonicalSIO4 {
  std::array<double, 4> a{};       // a1..a4 >= 0
  std::array<Complex, 2> b{};      // b1, b2

  void validate(double tol = kFormTol) const {
    detail::require_nonnegative({a[0], a[1], a[2], a[3]}, "a");
    detail::require_normalized(a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3],
                               "a side of the SIO form", tol);
    detail::require_normalized(std::norm(b[0]) + std::norm(b[1]),
                               "b side of the SIO form", tol);
  }
};

struct LegacyIO5 {
  std::array<double, 5> a{};       // a1..a5 >= 0
  std::array<Complex, 4> b{};      // b1..b4

  void validate(double tol = kFormTol) const {
    detail::require_nonnegative({a[0], a[1], a[2], a[3], a[4]}, "a");
    double asum = 0.0;
    for (double v : a) asum += v * v;
    double bsum = 0.0;
    for (const Complex& v : b) bsum += std::norm(v);
    detail::require_normalized(asum, "a side of the legacy form", tol);
    detail::require_normalized(bsum, "b side of the legacy form", tol);
    if (std::abs(a[0] * b[0] + a[1] * b[1]) > tol)
      throw ValidationError("legacy form violates a1 b1 + a2 b2 = 0");
  }
};

namespace detail {

inline std::vector<CMatrix> drop_zero_ops(std::vector<CMatrix> ops) {
  std::vector<CMatrix> keep;
  for (auto& k : ops)
    if (k.max_abs() > 0.0) keep.push_back(std::move(k));
  return keep;
}

}  // namespace detail

inline QubitChannel to_kraus(const CanonicalIO4& form) {
  form.validate();
  const auto& [r, a, b] = form;
  std::vector<CMatrix> ops = {CMatrix{{r * a[0], b[0]}, {0.0, 0.0}},
                              CMatrix{{0.0, 0.0}, {a[0], -r * b[0]}},
                              CMatrix{{a[1], 0.0}, {0.0, b[1]}},
                              CMatrix{{0.0, b[2]}, {a[2], 0.0}}};
  return QubitChannel(detail::drop_zero_ops(std::move(ops)));
}

inline QubitChannel to_kraus(const CanonicalIO5& form) {
  form.validate();
  const auto& [r, a, b] = form;
  std::vector<CMatrix> ops = {CMatrix{{r * a[0], b[0]}, {0.0, 0.0}},
                              CMatrix{{0.0, 0.0}, {a[0], -r * b[0]}},
                              CMatrix{{a[1], 0.0}, {0.0, b[1]}},
                              CMatrix{{0.0, b[2]}, {a[2], 0.0}},
                              CMatrix{{a[3], 0.0}, {0.0, 0.0}}};
  return QubitChannel(detail::drop_zero_ops(std::move(ops)));
}

inline QubitChannel to_kraus(const CanonicalSIO4& form) {
  form.validate();
  std::vector<CMatrix> ops = {CMatrix{{form.a[0], 0.0}, {0.0, form.b[0]}},
                              CMatrix{{0.0, form.b[1]}, {form.a[1], 0.0}},
                              CMatrix{{form.a[2], 0.0}, {0.0, 0.0}},
                              CMatrix{{0.0, 0.0}, {form.a[3], 0.0}}};
  return QubitChannel(detail::drop_zero_ops(std::move(ops)));
}

inline QubitChannel to_kraus(const LegacyIO5& form) {
  form.validate();
  std::vector<CMatrix> ops = {CMatrix{{form.a[0], form.b[0]}, {0.0, 0.0}},
                              CMatrix{{0.0, 0.0}, {form.a[1], form.b[1]}},
                              CMatrix{{form.a[2], 0.0}, {0.0, form.b[2]}},
                              CMatrix{{0.0, form.b[3]}, {form.a[3], 0.0}},
                              CMatrix{{form.a[4], 0.0}, {0.0, 0.0}}};
  return QubitChannel(detail::drop_zero_ops(std::move(ops)));
}

/// Forgets the fifth operator slot; valid only when alpha4 is zero.
inline CanonicalIO4 truncate_to_four(const CanonicalIO5& form) {
  return CanonicalIO4{form.r,
                      {form.alpha[0], form.alpha[1], form.alpha[2]},
                      form.beta};
}

inline CanonicalIO5 extend_to_five(const CanonicalIO4& form) {
  return CanonicalIO5{form.r,
                      {form.alpha[0], form.alpha[1], form.alpha[2], 0.0},
                      form.beta};
}

}  // namespace qio
