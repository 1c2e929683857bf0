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

/// Constructive decomposition of an incoherent qubit channel into at most
/// four incoherent Kraus operators, working directly on the Choi matrix.
///
/// Writing 2M with slot order (K00, K01, K10, K11) as
///
///     [ a   e   0   g  ]
///     [ e*  b   f   0  ]
///     [ 0   f*  c  -e  ]
///     [ g*  0  -e*  d  ],
///
/// the engine splits 2M into four rank-one pieces supported on the slot
/// pairs (0,3), (1,2), (0,1), (2,3) — the Choi footprints of diagonal,
/// antidiagonal, row-1 and row-2 incoherent operators. The split exists
/// iff two free masses A, B satisfy
///
///     (a-A)(b-B) = (c - |f|^2/B)(d - |g|^2/A) = |e|^2,
///     A in (|g|^2/d, a),  B in (|f|^2/c, b),
///
/// which reduces, through the parametrization k = A(a-A)/(Ad-|g|^2),
/// to one quadratic in k. All scalar equations are solved with the
/// magnitudes |e|, |f|, |g|; the rank-one blocks keep the original complex
/// entries, which leaves their rank-one property untouched.
///
/// Cancellation-prone quantities (the quadratic roots and the four
/// complements a-A, b-B, c-|f|^2/B, d-|g|^2/A) are evaluated through
/// rationalized forms, and the selected root is polished on the
/// pre-squaring product equation before use.

#pragma once

#include <array>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "qio/canonical.hpp"
#include "qio/channel.hpp"

namespace qio {

constexpr double kDecomposeTol = 1e-9;
constexpr double kRootProductTol = 1e-8;   // relative, on |e|^2
constexpr double kRoundTripTol = 1e-9;     // max-norm Choi reconstruction gate

/// The seven scalars of the structured Choi matrix, times two.
struct ChoiEntries {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  Complex e, f, g;

  double em() const { return std::abs(e); }
  double fm() const { return std::abs(f); }
  double gm() const { return std::abs(g); }
};

/// True iff the Choi matrix carries no weight on the slots no incoherent
/// qubit operator can reach (m02 and m13).
inline bool io_membership(const ChoiMatrix& m, double tol = kDecomposeTol) {
  if (m.dim() != 2) throw DimensionError("io_membership is defined for qubits");
  const double scale = std::max(1.0, m.matrix().max_abs());
  return std::abs(m(0, 2)) <= tol * scale && std::abs(m(1, 3)) <= tol * scale;
}

inline ChoiEntries extract_entries(const ChoiMatrix& m, double tol = kDecomposeTol) {
  if (m.dim() != 2) throw DimensionError("extract_entries is defined for qubits");
  const CMatrix t = 2.0 * m.matrix();
  const double scale = std::max(1.0, t.max_abs());
  if (std::abs(t(0, 2)) > tol * scale || std::abs(t(1, 3)) > tol * scale) {
    std::ostringstream os;
    os << "channel is not incoherent: |m02| = " << 0.5 * std::abs(t(0, 2))
       << ", |m13| = " << 0.5 * std::abs(t(1, 3));
    throw NotIncoherentError(os.str());
  }
  ChoiEntries out;
  out.a = t(0, 0).real();
  out.b = t(1, 1).real();
  out.c = t(2, 2).real();
  out.d = t(3, 3).real();
  out.e = t(0, 1);
  out.f = t(1, 2);
  out.g = t(0, 3);
  if (std::abs(t(2, 3) + out.e) > tol * scale)
    throw ConstraintViolation("Choi slot (2,3) is not the negative of slot (0,1)");
  return out;
}

/// Coefficients and roots of the quadratic in k that the rank-one
/// conditions reduce to, plus the principal minors feeding them.
struct QuadraticData {
  double d1 = 0.0, d2 = 0.0, d3 = 0.0, d4 = 0.0;  // third-order minors of 2M
  double delta = 0.0;
  double coeff_alpha = 0.0, coeff_beta = 0.0, coeff_gamma = 0.0;
  double discriminant = 0.0;                       // beta^2 - 4 alpha gamma
  std::vector<double> roots;                       // positive, ascending
};

namespace detail {

/// Double-double arithmetic (Dekker/Knuth primitives). The discriminant
/// and its closed form cancel catastrophically near the double-root
/// locus; carrying ~32 digits through the degree-eight polynomials keeps
/// their comparison meaningful at any admissible input.
struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DD two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DD dd_add(const DD& x, const DD& y) {
  DD s = two_sum(x.hi, y.hi);
  const double lo = x.lo + y.lo + s.lo;
  const double hi = s.hi + lo;
  return {hi, lo - (hi - s.hi)};
}

inline DD dd_neg(const DD& x) { return {-x.hi, -x.lo}; }

inline DD dd_sub(const DD& x, const DD& y) { return dd_add(x, dd_neg(y)); }

inline DD dd_mul(const DD& x, const DD& y) {
  DD p = two_prod(x.hi, y.hi);
  p.lo += x.hi * y.lo + x.lo * y.hi;
  const double hi = p.hi + p.lo;
  return {hi, p.lo - (hi - p.hi)};
}

inline DD dd_scale2(const DD& x, double pow2) { return {x.hi * pow2, x.lo * pow2}; }

inline double dd_value(const DD& x) { return x.hi + x.lo; }

struct QuadraticDD {
  DD d1, d2, d3, d4, delta, alpha, beta, gamma, disc;
};

inline QuadraticDD quadratic_dd(const ChoiEntries& en) {
  const double a = en.a, b = en.b, c = en.c, d = en.d;
  const double e = en.em(), f = en.fm(), g = en.gm();
  const DD ee = two_prod(e, e), ff = two_prod(f, f), gg = two_prod(g, g);
  const DD adg = dd_sub(two_prod(a, d), gg);                 // ad - g^2
  const DD bcf = dd_sub(two_prod(b, c), ff);                 // bc - f^2
  const DD cde = dd_sub(two_prod(c, d), ee);                 // cd - e^2
  const DD ab = two_prod(a, b), cd = two_prod(c, d), fg = two_prod(f, g);
  QuadraticDD q;
  q.d1 = dd_sub(dd_mul({a, 0.0}, bcf), dd_mul({c, 0.0}, ee));
  q.d2 = dd_sub(dd_mul({b, 0.0}, adg), dd_mul({d, 0.0}, ee));
  q.d3 = dd_sub(dd_mul({a, 0.0}, cde), dd_mul({c, 0.0}, gg));
  q.d4 = dd_sub(dd_mul({b, 0.0}, cde), dd_mul({d, 0.0}, ff));
  q.delta = dd_sub(dd_mul(adg, bcf),
                   dd_mul(ee, dd_add(dd_sub(dd_add(ab, cd), ee), dd_scale2(fg, 2.0))));
  q.alpha = dd_mul(ee, dd_mul(q.d2, q.d4));
  q.gamma = dd_mul(ee, dd_mul(q.d1, q.d3));
  const DD e4 = dd_mul(ee, ee);
  const DD tail = dd_add(dd_add(dd_mul(ab, fg), dd_mul(two_prod(a, d), ff)),
                         dd_add(dd_mul(two_prod(b, c), gg), dd_mul(cd, fg)));
  q.beta = dd_add(dd_mul(q.delta, dd_add(q.delta, dd_mul(ee, dd_add(dd_add(ab, cd),
                                                                    dd_scale2(fg, 4.0))))),
                  dd_scale2(dd_mul(e4, tail), 2.0));
  q.disc = dd_sub(dd_mul(q.beta, q.beta), dd_scale2(dd_mul(q.alpha, q.gamma), 4.0));
  return q;
}

}  // namespace detail

inline QuadraticData quadratic_data(const ChoiEntries& en) {
  const detail::QuadraticDD dd = detail::quadratic_dd(en);
  QuadraticData q;
  q.d1 = detail::dd_value(dd.d1);
  q.d2 = detail::dd_value(dd.d2);
  q.d3 = detail::dd_value(dd.d3);
  q.d4 = detail::dd_value(dd.d4);
  q.delta = detail::dd_value(dd.delta);
  q.coeff_alpha = detail::dd_value(dd.alpha);
  q.coeff_beta = detail::dd_value(dd.beta);
  q.coeff_gamma = detail::dd_value(dd.gamma);
  q.discriminant = detail::dd_value(dd.disc);
  if (q.coeff_alpha > 0.0 && q.coeff_beta > 0.0) {
    const double sq = std::sqrt(std::max(q.discriminant, 0.0));
    const double big_half = 0.5 * (q.coeff_beta + sq);
    const double k_hi = big_half / q.coeff_alpha;
    const double k_lo = q.coeff_gamma / big_half;
    q.roots = {std::min(k_lo, k_hi), std::max(k_lo, k_hi)};
  }
  return q;
}

/// The closed form the discriminant factors into; used as a cross-check.
inline double closed_form_discriminant(const ChoiEntries& en) {
  using namespace detail;
  const double a = en.a, b = en.b, c = en.c, d = en.d;
  const double e = en.em(), f = en.fm(), g = en.gm();
  const DD ee = two_prod(e, e), ff = two_prod(f, f), gg = two_prod(g, g);
  const DD adg = dd_sub(two_prod(a, d), gg);
  const DD bcf = dd_sub(two_prod(b, c), ff);
  const DD ab = two_prod(a, b), cd = two_prod(c, d), fg = two_prod(f, g);
  const DD delta = dd_sub(dd_mul(adg, bcf),
                          dd_mul(ee, dd_add(dd_sub(dd_add(ab, cd), ee),
                                            dd_scale2(fg, 2.0))));
  const DD inner = dd_sub(dd_mul(adg, bcf), dd_mul(ee, ee));
  const DD D = dd_mul(dd_mul(delta, dd_add(delta, dd_scale2(dd_mul(ee, fg), 4.0))),
                      dd_mul(inner, inner));
  return dd_value(D);
}

/// Delta evaluated directly from five-operator canonical parameters
/// (magnitudes); equals quadratic_data(...).delta for the matching channel.
inline double closed_form_delta(const CanonicalIO5& form) {
  const double r = form.r;
  const double a1 = form.alpha[0], a2 = form.alpha[1], a3 = form.alpha[2],
               a4 = form.alpha[3];
  const double b1 = std::abs(form.beta[0]), b2 = std::abs(form.beta[1]),
               b3 = std::abs(form.beta[2]);
  const double cross = a2 * a3 * b1 * b1 - a1 * a1 * b2 * b3;
  return a1 * a1 * a4 * a4 * b2 * b2 * (b1 * b1 + b3 * b3) +
         a3 * a3 * a4 * a4 * b1 * b1 * (b2 * b2 + b1 * b1 * r * r) +
         r * r * cross * cross;
}

namespace detail {

/// A, B plus the four complements, all through cancellation-free forms.
struct Complements {
  double A = 0.0, B = 0.0;
  double a_minus_A = 0.0;
  double b_minus_B = 0.0;
  double c_minus_f2B = 0.0;  // c - |f|^2/B
  double d_minus_g2A = 0.0;  // d - |g|^2/A
};

inline Complements complements(double k, const ChoiEntries& en) {
  const double a = en.a, b = en.b, c = en.c, d = en.d;
  const double f = en.fm(), g = en.gm();
  const double t = std::sqrt((a - k * d) * (a - k * d) + 4.0 * k * g * g);
  const double s = std::sqrt((k * b - c) * (k * b - c) + 4.0 * k * f * f);
  Complements out;
  out.A = (a >= k * d) ? 0.5 * ((a - k * d) + t) : 2.0 * k * g * g / (t + (k * d - a));
  out.B = (k * b >= c) ? ((k * b - c) + s) / (2.0 * k) : 2.0 * f * f / (s + (c - k * b));
  out.a_minus_A = 2.0 * k * (a * d - g * g) / ((a + k * d) + t);
  out.b_minus_B = 2.0 * (b * c - f * f) / ((k * b + c) + s);
  const double s_minus = (k * b >= c) ? 4.0 * k * f * f / (s + (k * b - c)) : s + (c - k * b);
  const double t_minus = (a >= k * d) ? 4.0 * k * g * g / (t + (a - k * d)) : t + (k * d - a);
  out.c_minus_f2B =
      (f > 0.0) ? 2.0 * k * f * f * (b * c - f * f) / (out.B * (2.0 * k * f * f + c * s_minus))
                : c;
  out.d_minus_g2A =
      (g > 0.0) ? 2.0 * g * g * (a * d - g * g) / (out.A * (2.0 * g * g + d * t_minus))
                : d;
  return out;
}

/// Residual of the pre-squaring equation (a-A)(b-B) = |e|^2 at k.
inline double product_residual(double k, const ChoiEntries& en) {
  const Complements co = complements(k, en);
  return co.a_minus_A * co.b_minus_B - en.em() * en.em();
}

/// Newton refinement of a quadratic root against the pre-squaring
/// equation; the squared system inherits every rounding of its degree-8
/// coefficients, the original equation does not.
inline double polish_root(double k, const ChoiEntries& en) {
  for (int it = 0; it < 60; ++it) {
    const double h = product_residual(k, en);
    const double dk = k * 1e-7;
    const double hp = (product_residual(k + dk, en) - product_residual(k - dk, en)) /
                      (2.0 * dk);
    if (hp == 0.0) break;
    double next = k - h / hp;
    if (next <= 0.0) next = 0.5 * k;
    const bool done = std::abs(next - k) <= 1e-15 * k;
    k = next;
    if (done) break;
  }
  return k;
}

inline bool root_is_valid(double k, const ChoiEntries& en) {
  if (!(k > 0.0) || !std::isfinite(k)) return false;
  const Complements co = complements(k, en);
  if (!(co.a_minus_A > 0.0) || !(co.b_minus_B > 0.0) || !(co.c_minus_f2B > 0.0) ||
      !(co.d_minus_g2A > 0.0))
    return false;
  const double e2 = en.em() * en.em();
  const double tol = kRootProductTol * std::max(e2, 1e-300);
  return std::abs(co.a_minus_A * co.b_minus_B - e2) <= tol &&
         std::abs(co.c_minus_f2B * co.d_minus_g2A - e2) <= tol;
}

}  // namespace detail

/// The two rank-one products (a-A)(b-B) and (c-|f|^2/B)(d-|g|^2/A) at k,
/// through the rationalized complement forms.
inline std::pair<double, double> product_conditions(double k, const ChoiEntries& en) {
  const detail::Complements co = detail::complements(k, en);
  return {co.a_minus_A * co.b_minus_B, co.c_minus_f2B * co.d_minus_g2A};
}

/// A = [(a-kd) + sqrt((a-kd)^2 + 4k|g|^2)]/2 and the matching B.
inline std::pair<double, double> compute_AB(double k, const ChoiEntries& en) {
  if (!(k > 0.0)) throw ConstraintViolation("compute_AB needs k > 0");
  const detail::Complements co = detail::complements(k, en);
  const double slack = 1e-7;
  if (co.A < -slack || co.a_minus_A < -slack || co.B < -slack || co.b_minus_B < -slack ||
      co.c_minus_f2B < -slack || co.d_minus_g2A < -slack)
    throw ConstraintViolation("A or B left its admissible interval");
  return {co.A, co.B};
}

/// Picks the (smaller, when both qualify) quadratic root whose mass pair
/// satisfies both rank-one product conditions. Each candidate is polished
/// on the pre-squaring equation first.
inline double select_root(const QuadraticData& q, const ChoiEntries& en) {
  if (q.roots.empty()) throw NoValidRootError("quadratic produced no positive roots");
  std::vector<double> candidates;
  for (double k0 : q.roots) {
    if (!(k0 > 0.0) || !std::isfinite(k0)) continue;
    candidates.push_back(detail::polish_root(k0, en));
  }
  std::sort(candidates.begin(), candidates.end());
  for (double k : candidates)
    if (detail::root_is_valid(k, en)) return k;
  throw NoValidRootError("no quadratic root satisfies the product conditions");
}

/// How many roots pass validation; exposed so callers can tally the
/// single- versus double-validity frequency empirically.
inline int count_valid_roots(const QuadraticData& q, const ChoiEntries& en) {
  int n = 0;
  for (double k0 : q.roots) {
    if (!(k0 > 0.0) || !std::isfinite(k0)) continue;
    if (detail::root_is_valid(detail::polish_root(k0, en), en)) ++n;
  }
  return n;
}

enum class BlockType { kDiag, kAntidiag, kRow1, kRow2 };

inline const char* to_string(BlockType t) {
  switch (t) {
    case BlockType::kDiag: return "diag";
    case BlockType::kAntidiag: return "antidiag";
    case BlockType::kRow1: return "row1";
    case BlockType::kRow2: return "row2";
  }
  return "?";
}

/// One PSD rank-<=1 piece of 2M, supported on a single slot pair.
struct Rank1Block {
  BlockType type = BlockType::kDiag;
  std::array<int, 2> slots{0, 3};
  CMatrix local{2, 2};  // [[p, x],[x*, q]] at (slots[0], slots[1])

  CMatrix embedded() const {
    CMatrix m(4, 4);
    m(slots[0], slots[0]) = local(0, 0);
    m(slots[0], slots[1]) = local(0, 1);
    m(slots[1], slots[0]) = local(1, 0);
    m(slots[1], slots[1]) = local(1, 1);
    return m;
  }

  /// Smaller eigenvalue of the local block: the rank-one defect.
  double rank1_defect() const {
    const double p = local(0, 0).real(), q = local(1, 1).real();
    const double x = std::abs(local(0, 1));
    const double hyp = std::sqrt((p - q) * (p - q) + 4.0 * x * x);
    return 0.5 * ((p + q) - hyp);
  }
};

inline std::array<int, 2> slots_for(BlockType t) {
  switch (t) {
    case BlockType::kDiag: return {0, 3};
    case BlockType::kAntidiag: return {1, 2};
    case BlockType::kRow1: return {0, 1};
    case BlockType::kRow2: return {2, 3};
  }
  return {0, 3};
}

namespace detail {

// Local index of the entry the phase convention pins real-nonnegative:
// slot 0 for diag/row1 blocks, slot 2 for antidiag/row2 blocks.
inline int designated_local(BlockType t) {
  return (t == BlockType::kAntidiag) ? 1 : 0;
}

}  // namespace detail

/// The four Eq-pattern blocks of the generic split. Blocks keep the
/// original complex couplings; only the masses come from A and B.
inline std::array<Rank1Block, 4> split_blocks(const ChoiEntries& en, double A, double B) {
  const double f2B = (en.fm() > 0.0) ? en.fm() * en.fm() / B : 0.0;
  const double g2A = (en.gm() > 0.0) ? en.gm() * en.gm() / A : 0.0;
  std::array<Rank1Block, 4> out;
  out[0] = {BlockType::kDiag, {0, 3},
            CMatrix{{A, en.g}, {std::conj(en.g), g2A}}};
  out[1] = {BlockType::kAntidiag, {1, 2},
            CMatrix{{B, en.f}, {std::conj(en.f), f2B}}};
  out[2] = {BlockType::kRow1, {0, 1},
            CMatrix{{en.a - A, en.e}, {std::conj(en.e), en.b - B}}};
  out[3] = {BlockType::kRow2, {2, 3},
            CMatrix{{en.c - f2B, -en.e}, {-std::conj(en.e), en.d - g2A}}};
  return out;
}

/// Extracts the Kraus operator whose Choi footprint is the given rank-one
/// block. The designated alpha-type entry is rotated real-nonnegative.
inline KrausOperator rank1_to_kraus(const Rank1Block& block, double drop_tol = 1e-14) {
  const double p = block.local(0, 0).real();
  const double q = block.local(1, 1).real();
  const Complex x = block.local(0, 1);
  const double hyp = std::sqrt((p - q) * (p - q) + 4.0 * std::norm(x));
  const double lam = 0.5 * ((p + q) + hyp);
  CMatrix k(2, 2);
  if (lam <= drop_tol * std::max(1.0, std::max(p, q)) || lam <= 0.0)
    return KrausOperator(std::move(k));

  Complex v0, v1;
  if (p >= q) {
    v0 = lam - q;
    v1 = std::conj(x);
  } else {
    v0 = x;
    v1 = lam - p;
  }
  const double n = std::sqrt(std::norm(v0) + std::norm(v1));
  const double s = std::sqrt(lam) / n;
  v0 *= s;
  v1 *= s;
  // phase convention
  Complex anchor = (detail::designated_local(block.type) == 0) ? v0 : v1;
  if (std::abs(anchor) <= drop_tol) anchor = (std::abs(v0) >= std::abs(v1)) ? v0 : v1;
  if (std::abs(anchor) > 0.0) {
    const Complex ph = std::conj(anchor) / std::abs(anchor);
    v0 *= ph;
    v1 *= ph;
  }
  const int s0 = block.slots[0], s1 = block.slots[1];
  k(s0 / 2, s0 % 2) = v0;
  k(s1 / 2, s1 % 2) = v1;
  return KrausOperator(std::move(k));
}

enum class DecompositionPath {
  kGeneric,       // full quadratic machinery
  kSioSplit,      // |e| ~ 0: two decoupled 2x2 blocks
  kRowSplit,      // |f|,|g| ~ 0: row blocks only
  kZeroG,         // |g| ~ 0, |e|,|f| > 0: closed-form masses
  kZeroF,         // |f| ~ 0, |e|,|g| > 0: mirror closed form
  kSlotReduction  // a vanishing diagonal slot was projected out
};

inline const char* to_string(DecompositionPath p) {
  switch (p) {
    case DecompositionPath::kGeneric: return "generic";
    case DecompositionPath::kSioSplit: return "sio_split";
    case DecompositionPath::kRowSplit: return "row_split";
    case DecompositionPath::kZeroG: return "zero_g";
    case DecompositionPath::kZeroF: return "zero_f";
    case DecompositionPath::kSlotReduction: return "slot_reduction";
  }
  return "?";
}

struct DecompositionSolution {
  std::optional<double> k;
  std::optional<double> A;
  std::optional<double> B;
  std::vector<Rank1Block> blocks;
  std::optional<CanonicalIO4> canonical;
  QubitChannel kraus;
  DecompositionPath path = DecompositionPath::kGeneric;
  double roundtrip_error = 0.0;
  std::vector<double> block_defects;
  int valid_root_count = 0;

  explicit DecompositionSolution(QubitChannel ch) : kraus(std::move(ch)) {}
};

namespace detail {

/// Spectral split of [[p, x],[x*, q]] into <= 2 rank-one blocks.
inline void spectral_split(const CMatrix& local, BlockType type,
                           std::vector<Rank1Block>& out, double drop_tol) {
  const double p = local(0, 0).real(), q = local(1, 1).real();
  const Complex x = local(0, 1);
  const double hyp = std::sqrt((p - q) * (p - q) + 4.0 * std::norm(x));
  const double l1 = 0.5 * ((p + q) + hyp);
  const double l2 = 0.5 * ((p + q) - hyp);
  if (l1 <= drop_tol) return;
  // top eigenvector
  Complex v0, v1;
  if (p >= q) {
    v0 = l1 - q;
    v1 = std::conj(x);
  } else {
    v0 = x;
    v1 = l1 - p;
  }
  const double n2 = std::norm(v0) + std::norm(v1);
  const double inv = 1.0 / n2;
  Rank1Block b1{type, slots_for(type),
                CMatrix{{l1 * std::norm(v0) * inv, l1 * v0 * std::conj(v1) * inv},
                        {l1 * v1 * std::conj(v0) * inv, l1 * std::norm(v1) * inv}}};
  out.push_back(std::move(b1));
  if (l2 > drop_tol) {
    // orthogonal complement (-conj(v1), conj(v0)) carries l2
    const Complex w0 = -std::conj(v1), w1 = std::conj(v0);
    Rank1Block b2{type, slots_for(type),
                  CMatrix{{l2 * std::norm(w0) * inv, l2 * w0 * std::conj(w1) * inv},
                          {l2 * w1 * std::conj(w0) * inv, l2 * std::norm(w1) * inv}}};
    out.push_back(std::move(b2));
  }
}

/// Pivot peel of a decoupled 2x2 block [[p, x],[x*, q]]: one rank-one
/// piece absorbing the designated pivot side plus a single-entry rest.
/// pivot_local = 1 peels around q, pivot_local = 0 around p. Produces
/// exactly rank-many pieces at the drop tolerance.
inline void pivot_peel(const CMatrix& local, BlockType type, int pivot_local,
                       std::vector<Rank1Block>& out, double drop_tol) {
  const double p = local(0, 0).real(), q = local(1, 1).real();
  const Complex x = local(0, 1);
  const double pivot = (pivot_local == 1) ? q : p;
  const double other = (pivot_local == 1) ? p : q;
  if (pivot > drop_tol) {
    const double schur = std::norm(x) / pivot;
    CMatrix piece(2, 2);
    if (pivot_local == 1) {
      piece(0, 0) = schur;
      piece(0, 1) = x;
      piece(1, 0) = std::conj(x);
      piece(1, 1) = pivot;
    } else {
      piece(0, 0) = pivot;
      piece(0, 1) = x;
      piece(1, 0) = std::conj(x);
      piece(1, 1) = schur;
    }
    out.push_back({type, slots_for(type), std::move(piece)});
    const double rest = other - schur;
    if (rest > drop_tol) {
      CMatrix single(2, 2);
      single(pivot_local == 1 ? 0 : 1, pivot_local == 1 ? 0 : 1) = rest;
      out.push_back({type, slots_for(type), std::move(single)});
    }
  } else if (other > drop_tol) {
    // pivot side empty; the coupling is bounded by sqrt(pivot*other)
    CMatrix single(2, 2);
    single(pivot_local == 1 ? 0 : 1, pivot_local == 1 ? 0 : 1) = other;
    out.push_back({type, slots_for(type), std::move(single)});
  }
}

/// Blocks for a structurally strictly-incoherent Choi (|e| ~ 0): the
/// (0,3) block peels around d, the (1,2) block around b, mirroring the
/// canonical SIO split. Piece count matches the numerical Kraus rank.
inline std::vector<Rank1Block> sio_blocks(const ChoiEntries& en, double drop_tol) {
  std::vector<Rank1Block> out;
  pivot_peel(CMatrix{{en.a, en.g}, {std::conj(en.g), en.d}}, BlockType::kDiag,
             /*pivot_local=*/1, out, drop_tol);
  pivot_peel(CMatrix{{en.b, en.f}, {std::conj(en.f), en.c}}, BlockType::kAntidiag,
             /*pivot_local=*/0, out, drop_tol);
  return out;
}

/// Exact rank-one piece [[p, x],[x*, |x|^2/p]] (Schur-saturated on the
/// second slot) or its mirror, pushed when the pivot carries mass.
inline double push_schur_piece(double pivot, const Complex& x, int pivot_local,
                               BlockType type, std::vector<Rank1Block>& out,
                               double drop_tol) {
  if (pivot <= drop_tol) return 0.0;
  const double schur = std::norm(x) / pivot;
  CMatrix piece(2, 2);
  piece(pivot_local, pivot_local) = pivot;
  piece(1 - pivot_local, 1 - pivot_local) = schur;
  piece(0, 1) = x;
  piece(1, 0) = std::conj(x);
  out.push_back({type, slots_for(type), std::move(piece)});
  return schur;
}

/// One vanishing diagonal slot: drop its row/column (PSD bounds the lost
/// couplings by sqrt(slot mass)) and split what remains over the two
/// surviving slot pairs; exact when the slot mass is exactly zero. The
/// pair away from the shared slot is Schur-saturated, the shared-slot
/// remainder is split spectrally.
inline std::vector<Rank1Block> slot_reduction_blocks(const ChoiEntries& en, int slot,
                                                     double drop_tol) {
  std::vector<Rank1Block> out;
  switch (slot) {
    case 0: {  // survivors: f on (1,2), -e on (2,3); shared slot 2
      const double absorbed =
          push_schur_piece(en.b, en.f, 0, BlockType::kAntidiag, out, drop_tol);
      spectral_split(CMatrix{{en.c - absorbed, -en.e}, {-std::conj(en.e), en.d}},
                     BlockType::kRow2, out, drop_tol);
      break;
    }
    case 1: {  // survivors: g on (0,3), -e on (2,3); shared slot 3
      const double absorbed =
          push_schur_piece(en.a, en.g, 0, BlockType::kDiag, out, drop_tol);
      spectral_split(CMatrix{{en.c, -en.e}, {-std::conj(en.e), en.d - absorbed}},
                     BlockType::kRow2, out, drop_tol);
      break;
    }
    case 2: {  // survivors: e on (0,1), g on (0,3); shared slot 0
      const double absorbed =
          push_schur_piece(en.b, en.e, 1, BlockType::kRow1, out, drop_tol);
      spectral_split(CMatrix{{en.a - absorbed, en.g}, {std::conj(en.g), en.d}},
                     BlockType::kDiag, out, drop_tol);
      break;
    }
    default: {  // slot 3; survivors: e on (0,1), f on (1,2); shared slot 1
      const double absorbed =
          push_schur_piece(en.c, en.f, 1, BlockType::kAntidiag, out, drop_tol);
      spectral_split(CMatrix{{en.a, en.e}, {std::conj(en.e), en.b - absorbed}},
                     BlockType::kRow1, out, drop_tol);
      break;
    }
  }
  return out;
}

/// Attempt to express the produced operators as one CanonicalIO4 record.
/// Requires at most one block per type; some degenerate splits (two
/// pieces of one type) have no four-form representative, and then the
/// record is absent.
inline std::optional<CanonicalIO4> fit_canonical(const std::vector<Rank1Block>& blocks,
                                                 const std::vector<KrausOperator>& ops,
                                                 const ChoiMatrix& m) {
  std::array<const KrausOperator*, 4> by_type{nullptr, nullptr, nullptr, nullptr};
  for (size_t i = 0; i < blocks.size(); ++i) {
    const int t = static_cast<int>(blocks[i].type);
    if (by_type[t]) return std::nullopt;  // two blocks of one type
    by_type[t] = &ops[i];
  }
  auto entry = [&](BlockType t, int local) -> Complex {
    const auto* op = by_type[static_cast<int>(t)];
    if (!op) return 0.0;
    const int slot = slots_for(t)[local];
    return op->matrix(slot / 2, slot % 2);
  };
  const double v10 = entry(BlockType::kRow1, 0).real();  // r a1
  const Complex v11 = entry(BlockType::kRow1, 1);        // b1
  const double v20 = entry(BlockType::kRow2, 0).real();  // a1
  const Complex v21 = entry(BlockType::kRow2, 1);        // -r b1

  CanonicalIO4 rec;
  if (v20 > 1e-12) {
    rec.r = v10 / v20;
    rec.alpha[0] = v20;
    rec.beta[0] = v11;
    if (std::abs(v21 + rec.r * rec.beta[0]) > 1e-9) return std::nullopt;
  } else {
    // no row-2 mass: the row pair must be (nearly) absent
    if (std::abs(v10) > 1e-9 || std::abs(v21) > 1e-9) return std::nullopt;
    rec.r = 0.0;
    rec.alpha[0] = 0.0;
    rec.beta[0] = v11;
  }
  rec.alpha[1] = std::max(entry(BlockType::kDiag, 0).real(), 0.0);
  rec.beta[1] = entry(BlockType::kDiag, 1);
  rec.alpha[2] = std::max(entry(BlockType::kAntidiag, 1).real(), 0.0);
  rec.beta[2] = entry(BlockType::kAntidiag, 0);
  try {
    rec.validate(1e-8);
    const QubitChannel rebuilt = to_kraus(rec);
    if (max_abs_diff(choi(rebuilt).matrix(), m.matrix()) > kRoundTripTol)
      return std::nullopt;
  } catch (const Error&) {
    return std::nullopt;
  }
  return rec;
}

}  // namespace detail

/// The four-operator decomposition of an incoherent qubit channel given
/// by its Choi matrix. Throws NotIncoherentError when the IO structure is
/// absent, NoValidRootError / ConstraintViolation on numerically
/// inconsistent input.
inline DecompositionSolution decompose_io(const ChoiMatrix& m, double tol = kDecomposeTol) {
  const ChoiEntries en = extract_entries(m, tol);
  const double scale = std::max(1.0, 2.0 * m.matrix().max_abs());
  const double t = tol * scale;
  const double drop = 1e-14 * scale;
  const double em = en.em(), fm = en.fm(), gm = en.gm();
  const double min_diag = std::min(std::min(en.a, en.b), std::min(en.c, en.d));

  std::vector<Rank1Block> blocks;
  DecompositionPath path;
  std::optional<double> k_out, a_out, b_out;
  int valid_roots = 0;

  if (em <= t) {
    path = DecompositionPath::kSioSplit;
    blocks = detail::sio_blocks(en, 0.1 * t);
  } else if (fm <= t && gm <= t) {
    path = DecompositionPath::kRowSplit;
    detail::spectral_split(CMatrix{{en.a, en.e}, {std::conj(en.e), en.b}},
                           BlockType::kRow1, blocks, drop);
    detail::spectral_split(CMatrix{{en.c, -en.e}, {-std::conj(en.e), en.d}},
                           BlockType::kRow2, blocks, drop);
  } else if (min_diag <= t) {
    path = DecompositionPath::kSlotReduction;
    int slot = 0;
    double best = en.a;
    const double diags[4] = {en.a, en.b, en.c, en.d};
    for (int i = 1; i < 4; ++i)
      if (diags[i] < best) {
        best = diags[i];
        slot = i;
      }
    blocks = detail::slot_reduction_blocks(en, slot, 0.1 * t);
  } else if (gm <= t) {
    path = DecompositionPath::kZeroG;
    const double cd = en.c * en.d - em * em;
    if (cd <= 0.0) throw ConstraintViolation("minor cd - |e|^2 is not positive");
    const double B = fm * fm * en.d / cd;
    const double bmB = en.b - B;
    if (!(bmB > 0.0)) throw ConstraintViolation("B left its admissible interval");
    double A = en.a - em * em / bmB;
    if (A < -t) throw ConstraintViolation("A left its admissible interval");
    A = std::max(A, 0.0);
    blocks.push_back({BlockType::kDiag, {0, 3}, CMatrix{{A, 0.0}, {0.0, 0.0}}});
    blocks.push_back({BlockType::kAntidiag, {1, 2},
                      CMatrix{{B, en.f}, {std::conj(en.f), fm * fm / B}}});
    blocks.push_back({BlockType::kRow1, {0, 1},
                      CMatrix{{en.a - A, en.e}, {std::conj(en.e), bmB}}});
    blocks.push_back({BlockType::kRow2, {2, 3},
                      CMatrix{{em * em / en.d, -en.e}, {-std::conj(en.e), en.d}}});
    a_out = A;
    b_out = B;
  } else if (fm <= t) {
    path = DecompositionPath::kZeroF;
    const double cd = en.c * en.d - em * em;
    if (cd <= 0.0) throw ConstraintViolation("minor cd - |e|^2 is not positive");
    const double A = gm * gm * en.c / cd;
    const double amA = en.a - A;
    if (!(amA > 0.0)) throw ConstraintViolation("A left its admissible interval");
    double B = en.b - em * em / amA;
    if (B < -t) throw ConstraintViolation("B left its admissible interval");
    B = std::max(B, 0.0);
    blocks.push_back({BlockType::kDiag, {0, 3},
                      CMatrix{{A, en.g}, {std::conj(en.g), gm * gm / A}}});
    blocks.push_back({BlockType::kAntidiag, {1, 2}, CMatrix{{B, 0.0}, {0.0, 0.0}}});
    blocks.push_back({BlockType::kRow1, {0, 1},
                      CMatrix{{amA, en.e}, {std::conj(en.e), en.b - B}}});
    blocks.push_back({BlockType::kRow2, {2, 3},
                      CMatrix{{en.c, -en.e}, {-std::conj(en.e), em * em / en.c}}});
    a_out = A;
    b_out = B;
  } else {
    path = DecompositionPath::kGeneric;
    const QuadraticData q = quadratic_data(en);
    const double k = select_root(q, en);
    valid_roots = count_valid_roots(q, en);
    const detail::Complements co = detail::complements(k, en);
    blocks.resize(4);
    blocks[0] = {BlockType::kDiag, {0, 3},
                 CMatrix{{co.A, en.g}, {std::conj(en.g), gm * gm / co.A}}};
    blocks[1] = {BlockType::kAntidiag, {1, 2},
                 CMatrix{{co.B, en.f}, {std::conj(en.f), fm * fm / co.B}}};
    blocks[2] = {BlockType::kRow1, {0, 1},
                 CMatrix{{co.a_minus_A, en.e}, {std::conj(en.e), co.b_minus_B}}};
    blocks[3] = {BlockType::kRow2, {2, 3},
                 CMatrix{{co.c_minus_f2B, -en.e}, {-std::conj(en.e), co.d_minus_g2A}}};
    k_out = k;
    a_out = co.A;
    b_out = co.B;
  }

  // blocks -> operators, dropping empty pieces
  std::vector<Rank1Block> kept;
  std::vector<KrausOperator> ops;
  std::vector<double> defects;
  for (auto& blk : blocks) {
    KrausOperator op = rank1_to_kraus(blk);
    if (op.matrix.max_abs() == 0.0) continue;
    defects.push_back(std::abs(blk.rank1_defect()));
    kept.push_back(std::move(blk));
    ops.push_back(std::move(op));
  }
  if (ops.size() > 4)
    throw ConstraintViolation("decomposition produced more than four operators");

  std::vector<CMatrix> mats;
  mats.reserve(ops.size());
  for (const auto& op : ops) mats.push_back(op.matrix);
  QubitChannel out_channel = [&]() -> QubitChannel {
    try {
      return QubitChannel(std::move(mats));
    } catch (const ValidationError& err) {
      throw ConstraintViolation(std::string("no four-pattern split stays within the "
                                            "channel gates: ") + err.what());
    }
  }();
  DecompositionSolution sol{std::move(out_channel)};
  sol.roundtrip_error = max_abs_diff(choi(sol.kraus).matrix(), m.matrix());
  if (sol.roundtrip_error > kRoundTripTol) {
    std::ostringstream os;
    os << "Choi reconstruction error " << sol.roundtrip_error << " exceeds "
       << kRoundTripTol;
    throw ConstraintViolation(os.str());
  }
  for (const auto& op : sol.kraus.operators())
    if (op.pattern && op.pattern->tag == PatternTag::kNotIncoherent)
      throw ConstraintViolation("decomposition produced a non-incoherent operator");

  sol.k = k_out;
  sol.A = a_out;
  sol.B = b_out;
  sol.path = path;
  sol.valid_root_count = valid_roots;
  sol.block_defects = std::move(defects);
  sol.canonical = detail::fit_canonical(kept, sol.kraus.operators(), m);
  sol.blocks = std::move(kept);
  return sol;
}

}  // namespace qio
