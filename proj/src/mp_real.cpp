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

#include "gpc/mp_real.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>

#include "gpc/errors.hpp"

namespace gpc {

namespace {

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;
constexpr double kLog2Of10 = 3.32192809488736234787;

mpfr_prec_t min_prec(const MpReal& x, const MpReal& y) {
  return std::min(x.precision(), y.precision());
}

}  // namespace

mpfr_prec_t digits_to_bits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(std::max(digits, 1) * kLog2Of10)) + 4;
}

int bits_to_digits(mpfr_prec_t bits) {
  return static_cast<int>(std::floor(static_cast<double>(bits - 4) / kLog2Of10));
}

PrecisionContext PrecisionContext::for_target(int target, int guard) {
  PrecisionContext ctx;
  ctx.target_digits = target;
  ctx.guard_digits = guard;
  ctx.working_digits = target + guard;
  ctx.validate();
  return ctx;
}

PrecisionContext PrecisionContext::widened(int extra) const {
  PrecisionContext ctx = *this;
  ctx.working_digits += std::max(extra, 0);
  return ctx;
}

void PrecisionContext::validate() const {
  if (target_digits < 1) throw DomainError("target_digits must be positive");
  if (guard_digits < 0) throw DomainError("guard_digits must be non-negative");
  if (working_digits < target_digits)
    throw DomainError("working_digits must be at least target_digits");
}

// ---------------------------------------------------------------------------

MpReal::MpReal() {
  mpfr_init2(v_, 64);
  mpfr_set_zero(v_, 1);
}

MpReal::MpReal(long value, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_si(v_, value, kRnd);
}

MpReal::MpReal(double value, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_d(v_, value, kRnd);
}

MpReal MpReal::parse(std::string_view text, mpfr_prec_t bits) {
  std::string s(text);
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), [](unsigned char c) { return !std::isspace(c); }));
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  MpReal out(0L, bits);
  if (s.empty()) throw DomainError("empty numeric literal");
  char* end = nullptr;
  mpfr_strtofr(out.v_, s.c_str(), &end, 10, kRnd);
  if (end != s.c_str() + s.size() || out.is_nan())
    throw DomainError("malformed numeric literal '" + s + "'");
  return out;
}

MpReal MpReal::infinity(mpfr_prec_t bits) {
  MpReal out(0L, bits);
  mpfr_set_inf(out.v_, 1);
  return out;
}

MpReal MpReal::pi(mpfr_prec_t bits) {
  MpReal out(0L, bits);
  mpfr_const_pi(out.v_, kRnd);
  return out;
}

MpReal MpReal::ln2(mpfr_prec_t bits) {
  MpReal out(0L, bits);
  mpfr_const_log2(out.v_, kRnd);
  return out;
}

MpReal::MpReal(const MpReal& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, kRnd);
}

MpReal::MpReal(MpReal&& other) noexcept {
  // Steal the limbs; the source is left in a "moved-from" state that only
  // supports destruction and assignment.
  *v_ = *other.v_;
  other.v_->_mpfr_d = nullptr;
}

MpReal& MpReal::operator=(const MpReal& other) {
  if (this == &other) return *this;
  init_if_moved(other.precision());
  mpfr_set_prec(v_, other.precision());
  mpfr_set(v_, other.v_, kRnd);
  return *this;
}

MpReal& MpReal::operator=(MpReal&& other) noexcept {
  if (this == &other) return *this;
  if (v_->_mpfr_d != nullptr) mpfr_clear(v_);
  *v_ = *other.v_;
  other.v_->_mpfr_d = nullptr;
  return *this;
}

MpReal::~MpReal() {
  if (v_->_mpfr_d != nullptr) mpfr_clear(v_);
}

void MpReal::init_if_moved(mpfr_prec_t bits) {
  if (v_->_mpfr_d == nullptr) mpfr_init2(v_, bits);
}

MpReal MpReal::with_precision(mpfr_prec_t bits) const {
  MpReal out(0L, bits);
  mpfr_set(out.v_, v_, kRnd);
  return out;
}

double MpReal::to_double() const { return mpfr_get_d(v_, kRnd); }

long MpReal::to_long() const { return mpfr_get_si(v_, kRnd); }

double MpReal::log10_abs() const {
  if (is_zero()) return -HUGE_VAL;
  if (!is_finite()) return HUGE_VAL;
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, v_, kRnd);
  return std::log10(std::fabs(m)) + static_cast<double>(e) * 0.30102999566398119521;
}

std::string MpReal::to_string(int digits) const {
  if (is_nan()) return "nan";
  if (!is_finite()) return sign() > 0 ? "inf" : "-inf";
  if (is_zero()) return "0";
  const std::size_t n = digits > 0 ? static_cast<std::size_t>(digits)
                                   : mpfr_get_str_ndigits(10, precision());
  mpfr_exp_t e = 0;
  char* raw_digits = mpfr_get_str(nullptr, &e, 10, n, v_, kRnd);
  std::string d(raw_digits);
  mpfr_free_str(raw_digits);
  std::string out;
  if (d.front() == '-') {
    out.push_back('-');
    d.erase(d.begin());
  }
  out.push_back(d.front());
  if (d.size() > 1) {
    out.push_back('.');
    out.append(d, 1, std::string::npos);
  }
  out += "e" + std::to_string(static_cast<long>(e) - 1);
  return out;
}

MpReal MpReal::operator-() const {
  MpReal out(*this);
  mpfr_neg(out.v_, out.v_, kRnd);
  return out;
}

#define GPC_COMPOUND_MP(op, fn)                            \
  MpReal& MpReal::operator op(const MpReal& rhs) {         \
    if (rhs.precision() < precision()) {                   \
      MpReal tmp(0L, rhs.precision());                     \
      fn(tmp.v_, v_, rhs.v_, kRnd);                        \
      *this = std::move(tmp);                              \
    } else {                                               \
      fn(v_, v_, rhs.v_, kRnd);                            \
    }                                                      \
    return *this;                                          \
  }
GPC_COMPOUND_MP(+=, mpfr_add)
GPC_COMPOUND_MP(-=, mpfr_sub)
GPC_COMPOUND_MP(*=, mpfr_mul)
GPC_COMPOUND_MP(/=, mpfr_div)
#undef GPC_COMPOUND_MP

std::partial_ordering operator<=>(const MpReal& x, const MpReal& y) {
  if (x.is_nan() || y.is_nan()) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(x.raw(), y.raw());
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const MpReal& x, double y) {
  if (x.is_nan() || std::isnan(y)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_d(x.raw(), y);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

#define GPC_BINARY_MP(op, fn)                                   \
  MpReal operator op(const MpReal& x, const MpReal& y) {        \
    MpReal out(0L, min_prec(x, y));                             \
    fn(out.raw(), x.raw(), y.raw(), kRnd);                      \
    return out;                                                 \
  }
GPC_BINARY_MP(+, mpfr_add)
GPC_BINARY_MP(-, mpfr_sub)
GPC_BINARY_MP(*, mpfr_mul)
GPC_BINARY_MP(/, mpfr_div)
#undef GPC_BINARY_MP

MpReal scalar_minus(long x, const MpReal& y) {
  MpReal out(0L, y.precision());
  mpfr_si_sub(out.raw(), x, y.raw(), kRnd);
  return out;
}
MpReal scalar_minus(double x, const MpReal& y) {
  MpReal out(0L, y.precision());
  mpfr_d_sub(out.raw(), x, y.raw(), kRnd);
  return out;
}
MpReal scalar_div(long x, const MpReal& y) {
  MpReal out(0L, y.precision());
  mpfr_si_div(out.raw(), x, y.raw(), kRnd);
  return out;
}
MpReal scalar_div(double x, const MpReal& y) {
  MpReal out(0L, y.precision());
  mpfr_d_div(out.raw(), x, y.raw(), kRnd);
  return out;
}

std::ostream& operator<<(std::ostream& os, const MpReal& x) {
  const auto p = os.precision();
  return os << x.to_string(p > 0 ? static_cast<int>(p) : 0);
}

#define GPC_UNARY_MP(name, fn)                 \
  MpReal name(const MpReal& x) {               \
    MpReal out(0L, x.precision());             \
    fn(out.raw(), x.raw(), kRnd);              \
    return out;                                \
  }
GPC_UNARY_MP(abs, mpfr_abs)
GPC_UNARY_MP(sqrt, mpfr_sqrt)
GPC_UNARY_MP(exp, mpfr_exp)
GPC_UNARY_MP(log, mpfr_log)
GPC_UNARY_MP(log1p, mpfr_log1p)
GPC_UNARY_MP(expm1, mpfr_expm1)
GPC_UNARY_MP(sin, mpfr_sin)
#undef GPC_UNARY_MP

MpReal floor(const MpReal& x) {
  MpReal out(0L, x.precision());
  mpfr_floor(out.raw(), x.raw());
  return out;
}

MpReal round(const MpReal& x) {
  MpReal out(0L, x.precision());
  mpfr_round(out.raw(), x.raw());
  return out;
}

MpReal pow(const MpReal& x, const MpReal& y) {
  MpReal out(0L, min_prec(x, y));
  mpfr_pow(out.raw(), x.raw(), y.raw(), kRnd);
  return out;
}

MpReal pow(const MpReal& x, long n) {
  MpReal out(0L, x.precision());
  mpfr_pow_si(out.raw(), x.raw(), n, kRnd);
  return out;
}

MpReal sin_pi(const MpReal& x) {
  if (x.is_integer()) return MpReal(0L, x.precision());
  // Reduce to r in [-1, 1] exactly (subtracting an even integer is exact
  // once the working copy is wide enough to hold x's integer part).
  const mpfr_prec_t extra = std::max<long>(x.exponent2(), 0);
  MpReal wide = x.with_precision(x.precision() + extra);
  MpReal half = wide / 2L;
  MpReal r = wide - round(half) * 2L;
  if (r.is_zero()) return MpReal(0L, x.precision());
  MpReal out = sin(MpReal::pi(r.precision()) * r);
  return out.with_precision(x.precision());
}

MpReal min(const MpReal& x, const MpReal& y) { return (y < x) ? y : x; }
MpReal max(const MpReal& x, const MpReal& y) { return (y > x) ? y : x; }

double relative_difference(const MpReal& x, const MpReal& y) {
  if (x.is_zero() && y.is_zero()) return 0.0;
  MpReal d = abs(x - y);
  if (y.is_zero()) return HUGE_VAL;
  return std::pow(10.0, d.log10_abs() - y.log10_abs());
}

}  // namespace gpc
