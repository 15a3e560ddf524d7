// Copyright 2026 The gpcalc Authors
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


#include "gpc/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "gpc/errors.hpp"

namespace gpc {

namespace {

constexpr int kMaxLevel = 14;
constexpr double kLog10Of2 = 0.30102999566398119521;

struct Node {
  MpReal weight;
  MpReal from_lo;
  MpReal to_hi;
};

// Abscissa and weight for parameter u on an interval of half-width `half`.
Node node(const MpReal& u, const MpReal& half, const MpReal& half_pi) {
  const mpfr_prec_t bits = u.precision();
  MpReal s(0L, bits), ch_u(0L, bits), sh_u(0L, bits), ch_s(0L, bits);
  mpfr_sinh_cosh(sh_u.raw(), ch_u.raw(), u.raw(), MPFR_RNDN);
  s = half_pi * sh_u;
  mpfr_cosh(ch_s.raw(), s.raw(), MPFR_RNDN);
  const MpReal e_plus = exp(s * 2L);
  const MpReal e_minus = exp(s * -2L);
  Node n;
  n.from_lo = half * 2L / (e_minus + 1L);
  n.to_hi = half * 2L / (e_plus + 1L);
  n.weight = half * half_pi * ch_u / (ch_s * ch_s);
  return n;
}

}  // namespace

QuadratureResult tanh_sinh(const Integrand& f, const MpReal& lo_in, const MpReal& hi_in, int tol_digits,
                           mpfr_prec_t bits) {
  const MpReal lo = lo_in.with_precision(bits);
  const MpReal hi = hi_in.with_precision(bits);
  if (!(hi > lo)) throw DomainError("quadrature interval is empty");
  const MpReal half = (hi - lo) / 2L;
  const MpReal half_pi = MpReal::pi(bits) / 2L;
  const double eps = -static_cast<double>(bits) * kLog10Of2;
  QuadratureResult out;

  auto eval = [&](const MpReal& u) {
    Node n = node(u, half, half_pi);
    ++out.evaluations;
    if (n.from_lo.is_zero() || n.to_hi.is_zero()) return MpReal(0L, bits);
    const MpReal x = u.sign() > 0 ? hi - n.to_hi : lo + n.from_lo;
    return n.weight * f(x, n.from_lo, n.to_hi);
  };

  // Level 0: unit step, extend each side until two consecutive terms are
  // negligible against the running sum.
  MpReal sum = eval(MpReal(0L, bits));
  double u_max[2] = {0.0, 0.0};
  for (int side = 0; side < 2; ++side) {
    int quiet = 0;
    for (int k = 1; k <= 12; ++k) {
      const MpReal term = eval(MpReal(side == 0 ? -k : k, bits));
      sum += term;
      u_max[side] = k;
      const bool small = term.is_zero() || (!sum.is_zero() && term.log10_abs() - sum.log10_abs() < eps);
      quiet = small ? quiet + 1 : 0;
      if (quiet >= 2 && k >= 3) break;
    }
  }
  MpReal prev = sum;  // h * sum with h = 1
  for (int level = 1; level <= kMaxLevel; ++level) {
    const long steps = 1L << level;
    MpReal h(1L, bits);
    mpfr_div_2si(h.raw(), h.raw(), level, MPFR_RNDN);
    for (int side = 0; side < 2; ++side) {
      const long kmax = static_cast<long>(u_max[side] * static_cast<double>(steps));
      for (long k = 1; k < kmax; k += 2) {
        MpReal u = h * k;
        if (side == 0) u = -u;
        sum += eval(u);
      }
    }
    MpReal cur = sum * h;
    out.levels = level;
    if (cur.is_zero() && prev.is_zero()) {
      out.value = cur;
      out.error_log10 = eps;
      return out;
    }
    const MpReal diff = cur - prev;
    const double err = diff.is_zero() ? eps : diff.log10_abs() - cur.log10_abs();
    prev = cur;
    if (level >= 3 && err < -static_cast<double>(tol_digits)) {
      out.value = cur;
      out.error_log10 = std::max(err, eps);
      return out;
    }
  }
  throw ConvergenceError("tanh-sinh quadrature did not reach the requested tolerance");
}

QuadratureResult tanh_sinh_pieces(const Integrand& f, const std::vector<MpReal>& points, int tol_digits,
                                  mpfr_prec_t bits) {
  if (points.size() < 2) throw DomainError("quadrature needs at least two break points");
  QuadratureResult total;
  total.value = MpReal(0L, bits);
  total.error_log10 = -HUGE_VAL;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    QuadratureResult piece = tanh_sinh(f, points[i], points[i + 1], tol_digits, bits);
    total.value += piece.value;
    total.evaluations += piece.evaluations;
    total.levels = std::max(total.levels, piece.levels);
    if (!piece.value.is_zero())
      total.error_log10 = std::max(total.error_log10, piece.error_log10 + piece.value.log10_abs());
  }
  if (!total.value.is_zero()) total.error_log10 -= total.value.log10_abs();
  return total;
}

}  // namespace gpc
