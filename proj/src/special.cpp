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


#include "gpc/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gpc/errors.hpp"

namespace gpc {

namespace {

constexpr double kLog10Of2 = 0.30102999566398119521;
constexpr long kMaxSeriesTerms = 5'000'000;

// A value together with the number of decimal digits lost to cancellation
// while computing it.
struct Lossy {
  MpReal value;
  double loss = 0.0;
};

double eps_log10(mpfr_prec_t bits) { return -static_cast<double>(bits) * kLog10Of2; }

double cancellation(double max_part_log10, const MpReal& result) {
  if (result.is_zero()) return std::numeric_limits<double>::infinity();
  return std::max(0.0, max_part_log10 - result.log10_abs());
}

// Runs `f(bits)` and repeats at higher precision until the reported loss
// fits inside the guard digits.
template <typename F>
MpReal with_retry(const PrecisionContext& ctx, F&& f) {
  const mpfr_prec_t out_bits = ctx.working_bits();
  int extra = 0;
  int guard = std::max(ctx.guard_digits, 2);
  for (int attempt = 0; attempt < 6; ++attempt) {
    const mpfr_prec_t bits = out_bits + (extra > 0 ? digits_to_bits(extra) : 0);
    Lossy r = f(bits);
    if (r.loss <= extra + ctx.guard_digits - 1) return r.value.with_precision(out_bits);
    if (!std::isfinite(r.loss) && attempt >= 2) return r.value.with_precision(out_bits);
    guard *= 2;
    extra = (std::isfinite(r.loss) ? static_cast<int>(std::ceil(r.loss)) : extra) + guard;
  }
  throw ConvergenceError("precision retry limit reached");
}

MpReal one(mpfr_prec_t bits) { return MpReal(1L, bits); }

// log10 of the rounding unit at `bits`, the relative stop level for series.
bool negligible(const MpReal& term, const MpReal& sum, mpfr_prec_t bits) {
  if (term.is_zero()) return true;
  if (sum.is_zero()) return false;
  return term.log10_abs() - sum.log10_abs() < eps_log10(bits);
}

// sum_{j>=0} (a)_j / (b)_j z^j / j!, summed at `bits`.
Lossy kummer_series(const MpReal& a_in, const MpReal& b_in, const MpReal& z_in, mpfr_prec_t bits) {
  const MpReal a = a_in.with_precision(bits);
  const MpReal b = b_in.with_precision(bits);
  const MpReal z = z_in.with_precision(bits);
  const double jmin = std::max({0.0, -b.to_double(), std::fabs(z.to_double()) - a.to_double()});
  MpReal term = one(bits);
  MpReal sum = one(bits);
  double max_log = 0.0;
  for (long j = 0; j < kMaxSeriesTerms; ++j) {
    term *= a + j;
    term *= z;
    term /= b + j;
    term /= j + 1;
    sum += term;
    if (term.is_zero()) return {sum, cancellation(max_log, sum)};
    max_log = std::max(max_log, term.log10_abs());
    if (static_cast<double>(j) > jmin && negligible(term, sum, bits))
      return {sum, cancellation(max_log, sum)};
  }
  throw ConvergenceError("1F1 series did not converge");
}

// Large-x expansion of 1F1(a; b; -x)/Γ(b) for x > 0; empty when the terms
// start growing before they reach the rounding level.
bool kummer_asymptotic_reg(const MpReal& a, const MpReal& b, const MpReal& x, mpfr_prec_t bits,
                           const PrecisionContext& ctx, MpReal& out) {
  const MpReal c = (a - b + 1L).with_precision(bits);
  const MpReal aa = a.with_precision(bits);
  const MpReal xx = x.with_precision(bits);
  MpReal term = one(bits);
  MpReal sum = one(bits);
  double prev = 0.0;
  for (long s = 0; s < 100000; ++s) {
    term *= aa + s;
    term *= c + s;
    term /= xx;
    term /= s + 1;
    sum += term;
    if (term.is_zero() || negligible(term, sum, bits)) {
      PrecisionContext wide = ctx;
      wide.working_digits = bits_to_digits(bits);
      out = sum * pow(xx, -aa) * reciprocal_gamma(b.with_precision(bits) - aa, wide);
      return true;
    }
    const double cur = term.log10_abs();
    if (s > 2 && cur > prev) return false;
    prev = cur;
  }
  return false;
}

double asymptotic_threshold(mpfr_prec_t bits, const MpReal& a, const MpReal& b) {
  const double digits = static_cast<double>(bits) * kLog10Of2;
  return 1.2 * digits * std::log(10.0) + 20.0 + 2.0 * (std::fabs(a.to_double()) + std::fabs(b.to_double()));
}

MpReal lgamma_signed(const MpReal& x, mpfr_prec_t bits, int& sign) {
  MpReal out(0L, bits);
  mpfr_lgamma(out.raw(), &sign, x.raw(), MPFR_RNDN);
  return out;
}

}  // namespace

bool is_nonpositive_integer(const MpReal& x) { return x.is_integer() && x.sign() <= 0; }

MpReal ln_gamma(const MpReal& x, const PrecisionContext& ctx) {
  if (!(x > 0.0)) throw DomainError("ln_gamma requires x > 0");
  MpReal out(0L, ctx.working_bits());
  mpfr_lngamma(out.raw(), x.raw(), MPFR_RNDN);
  return out;
}

MpReal gamma_fn(const MpReal& x, const PrecisionContext& ctx) {
  if (is_nonpositive_integer(x)) throw DomainError("gamma function pole");
  MpReal out(0L, ctx.working_bits());
  mpfr_gamma(out.raw(), x.raw(), MPFR_RNDN);
  return out;
}

MpReal reciprocal_gamma(const MpReal& x, const PrecisionContext& ctx) {
  if (is_nonpositive_integer(x)) return MpReal(0L, ctx.working_bits());
  const mpfr_prec_t bits = ctx.working_bits();
  int sign = 1;
  MpReal lg = lgamma_signed(x, bits + 64, sign);
  MpReal out = exp(-lg).with_precision(bits);
  return sign < 0 ? -out : out;
}

MpReal pochhammer(const MpReal& x, long k, const PrecisionContext& ctx) {
  if (k < 0) throw DomainError("pochhammer requires k >= 0");
  const mpfr_prec_t bits = ctx.working_bits();
  const MpReal xx = x.with_precision(bits);
  MpReal out = one(bits);
  for (long i = 0; i < k; ++i) out *= xx + i;
  return out;
}

MpReal beta_fn(const MpReal& A, const MpReal& B, const PrecisionContext& ctx) {
  if (is_nonpositive_integer(A) || is_nonpositive_integer(B))
    throw DomainError("beta function pole");
  const mpfr_prec_t bits = ctx.working_bits();
  const mpfr_prec_t wide = bits + 64;
  const MpReal s = A.with_precision(wide) + B.with_precision(wide);
  if (is_nonpositive_integer(s)) return MpReal(0L, bits);
  int s1 = 1, s2 = 1, s3 = 1;
  MpReal l = lgamma_signed(A, wide, s1) + lgamma_signed(B, wide, s2) - lgamma_signed(s, wide, s3);
  MpReal out = exp(l).with_precision(bits);
  return (s1 * s2 * s3) < 0 ? -out : out;
}

MpReal inc_beta_gen(const MpReal& z, const MpReal& A, const MpReal& B, const PrecisionContext& ctx) {
  if (z.sign() < 0 || !(z < 1.0)) throw DomainError("inc_beta_gen requires 0 <= z < 1");
  if (is_nonpositive_integer(B)) throw DomainError("inc_beta_gen: B is a non-positive integer");
  if (is_nonpositive_integer(A)) throw DomainError("inc_beta_gen: A is a non-positive integer");
  if (z.is_zero()) {
    if (A.sign() < 0) throw DomainError("inc_beta_gen diverges at z = 0 for A < 0");
    return MpReal(0L, ctx.working_bits());
  }
  const bool direct = !(z > 0.5);
  return with_retry(ctx, [&](mpfr_prec_t bits) -> Lossy {
    const MpReal zz = z.with_precision(bits);
    const MpReal a = A.with_precision(bits);
    const MpReal b = B.with_precision(bits);
    const MpReal ab = a + b;
    const MpReal w = 1L - zz;
    // x^p (1-x)^q / p * sum_j (p+q)_j / (p+1)_j x^j
    auto series = [&](const MpReal& x, const MpReal& p, const MpReal& q) -> Lossy {
      const MpReal pq = p + q;
      const double jmin = std::max(0.0, -pq.to_double());
      MpReal term = one(bits);
      MpReal sum = one(bits);
      double max_log = 0.0;
      for (long j = 0;; ++j) {
        if (j >= kMaxSeriesTerms) throw ConvergenceError("incomplete beta series did not converge");
        term *= pq + j;
        term /= p + (j + 1);
        term *= x;
        sum += term;
        if (term.is_zero()) break;
        max_log = std::max(max_log, term.log10_abs());
        if (static_cast<double>(j) > jmin && negligible(term, sum, bits)) break;
      }
      const MpReal pre = exp(p * log(x) + q * log1p(-x)) / p;
      return {pre * sum, cancellation(max_log, sum)};
    };
    if (direct) return series(zz, a, b);
    Lossy tail = series(w, b, a);
    PrecisionContext local = ctx;
    local.working_digits = bits_to_digits(bits);
    const MpReal full = beta_fn(a, b, local);
    MpReal out = full - tail.value;
    const double parts = std::max(full.is_zero() ? -HUGE_VAL : full.log10_abs(),
                                  tail.value.log10_abs() + tail.loss);
    return {out, std::max(tail.loss, cancellation(parts, out))};
  });
}

MpReal hyp1f1(const MpReal& a, const MpReal& b, const MpReal& z, const PrecisionContext& ctx) {
  if (is_nonpositive_integer(b)) throw DomainError("hyp1f1: b is a non-positive integer");
  const mpfr_prec_t out_bits = ctx.working_bits();
  if (z.is_zero()) return one(out_bits);
  if (z.sign() > 0 || is_nonpositive_integer(a))
    return with_retry(ctx, [&](mpfr_prec_t bits) { return kummer_series(a, b, z, bits); });
  const MpReal x = -z;
  if (x.to_double() > asymptotic_threshold(out_bits, a, b)) {
    const mpfr_prec_t bits = out_bits + 32;
    MpReal reg;
    if (kummer_asymptotic_reg(a, b, x, bits, ctx, reg)) {
      PrecisionContext wide = ctx;
      wide.working_digits = bits_to_digits(bits);
      return (reg * gamma_fn(b, wide)).with_precision(out_bits);
    }
  }
  return with_retry(ctx, [&](mpfr_prec_t bits) -> Lossy {
    const MpReal bb = b.with_precision(bits);
    Lossy s = kummer_series(bb - a.with_precision(bits), bb, x, bits);
    return {s.value * exp(z.with_precision(bits)), s.loss};
  });
}

MpReal hyp1f1_reg(const MpReal& a, const MpReal& b, const MpReal& z, const PrecisionContext& ctx) {
  const mpfr_prec_t bits = ctx.working_bits();
  if (z.is_zero()) return reciprocal_gamma(b, ctx);
  if (is_nonpositive_integer(b)) {
    const long m = -b.to_long();
    const MpReal aa = a.with_precision(bits);
    MpReal fact = one(bits);
    for (long i = 2; i <= m + 1; ++i) fact *= i;
    return pochhammer(aa, m + 1, ctx) * pow(z.with_precision(bits), m + 1) / fact *
           hyp1f1(aa + (m + 1), MpReal(m + 2, bits), z, ctx);
  }
  if (z.sign() < 0 && !is_nonpositive_integer(b - a) &&
      (-z).to_double() > asymptotic_threshold(bits, a, b)) {
    MpReal reg;
    if (kummer_asymptotic_reg(a, b, -z, bits + 32, ctx, reg)) return reg.with_precision(bits);
  }
  return hyp1f1(a, b, z, ctx) * reciprocal_gamma(b, ctx);
}

namespace {

// P(a,x) by its power series, valid for x < a + 1.
MpReal gamma_p_series(const MpReal& a, const MpReal& x, mpfr_prec_t bits) {
  const mpfr_prec_t wide = bits + 32;
  const MpReal aa = a.with_precision(wide);
  const MpReal xx = x.with_precision(wide);
  MpReal term = one(wide);
  MpReal sum = one(wide);
  for (long n = 1; n < kMaxSeriesTerms; ++n) {
    term *= xx;
    term /= aa + n;
    sum += term;
    if (negligible(term, sum, wide)) {
      MpReal lg(0L, wide);
      mpfr_lngamma(lg.raw(), (aa + 1L).raw(), MPFR_RNDN);
      return (exp(aa * log(xx) - xx - lg) * sum).with_precision(bits);
    }
  }
  throw ConvergenceError("incomplete gamma series did not converge");
}

// Q(a,x) by the Legendre continued fraction (modified Lentz), for x >= a + 1.
MpReal gamma_q_fraction(const MpReal& a, const MpReal& x, mpfr_prec_t bits) {
  const mpfr_prec_t wide = bits + 32;
  const MpReal aa = a.with_precision(wide);
  const MpReal xx = x.with_precision(wide);
  MpReal tiny(1L, wide);
  mpfr_mul_2si(tiny.raw(), tiny.raw(), -4 * static_cast<long>(wide), MPFR_RNDN);
  MpReal bcf = xx + 1L - aa;
  MpReal c = 1L / tiny;
  MpReal d = 1L / bcf;
  MpReal h = d;
  for (long i = 1; i < kMaxSeriesTerms; ++i) {
    const MpReal an = (aa - i) * i;
    bcf += 2L;
    d = an * d + bcf;
    if (d.is_zero()) d = tiny;
    c = bcf + an / c;
    if (c.is_zero()) c = tiny;
    d = 1L / d;
    const MpReal del = d * c;
    h *= del;
    if (negligible(del - 1L, one(wide), wide)) {
      MpReal lg(0L, wide);
      mpfr_lngamma(lg.raw(), aa.raw(), MPFR_RNDN);
      return (exp(aa * log(xx) - xx - lg) * h).with_precision(bits);
    }
  }
  throw ConvergenceError("incomplete gamma continued fraction did not converge");
}

void check_gamma_args(const MpReal& a, const MpReal& x) {
  if (!(a > 0.0)) throw DomainError("incomplete gamma requires a > 0");
  if (x.sign() < 0 || x.is_nan()) throw DomainError("incomplete gamma requires x >= 0");
}

}  // namespace

MpReal gamma_p(const MpReal& a, const MpReal& x, const PrecisionContext& ctx) {
  check_gamma_args(a, x);
  const mpfr_prec_t bits = ctx.working_bits();
  if (x.is_zero()) return MpReal(0L, bits);
  if (x < a + 1L) return gamma_p_series(a, x, bits);
  return 1L - gamma_q_fraction(a, x, bits);
}

MpReal gamma_q(const MpReal& a, const MpReal& x, const PrecisionContext& ctx) {
  check_gamma_args(a, x);
  const mpfr_prec_t bits = ctx.working_bits();
  if (x.is_zero()) return one(bits);
  if (x < a + 1L) return 1L - gamma_p_series(a, x, bits);
  return gamma_q_fraction(a, x, bits);
}

}  // namespace gpc
