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

#pragma once

#include <mpfr.h>

#include <compare>
#include <type_traits>
#include <iosfwd>
#include <string>
#include <string_view>

namespace gpc {

/// Binary precision needed to carry `digits` significant decimal digits.
mpfr_prec_t digits_to_bits(int digits);
/// Decimal digits carried by `bits` of binary precision (rounded down).
int bits_to_digits(mpfr_prec_t bits);

/// Precision contract for one evaluation.
///
/// `target_digits` is what the caller asks for; every evaluator runs its
/// arithmetic at `working_digits`, which is never below
/// `target_digits + guard_digits`.
struct PrecisionContext {
  int target_digits = 65;
  int working_digits = 75;
  int guard_digits = 10;

  /// Context for `target` digits with the default guard.
  static PrecisionContext for_target(int target, int guard = 10);

  mpfr_prec_t working_bits() const { return digits_to_bits(working_digits); }

  /// Same target, `extra` more working digits.
  PrecisionContext widened(int extra) const;

  /// Throws DomainError unless the fields are consistent.
  void validate() const;
};

/// Value-semantic RAII handle on an `mpfr_t`.
///
/// Each value carries its own precision. Binary operations between two
/// MpReals round to the smaller of the two precisions; operations with a
/// machine scalar keep the precision of the MpReal operand. There is no
/// process-wide default precision.
class MpReal {
 public:
  /// Zero at 64 bits.
  MpReal();
  MpReal(long value, mpfr_prec_t bits);
  MpReal(double value, mpfr_prec_t bits);
  MpReal(int value, mpfr_prec_t bits) : MpReal(static_cast<long>(value), bits) {}

  /// Parses a decimal (or scientific) literal, rounding once to `bits`.
  /// Throws DomainError on malformed input.
  static MpReal parse(std::string_view text, mpfr_prec_t bits);
  /// Positive infinity at `bits`.
  static MpReal infinity(mpfr_prec_t bits);
  static MpReal pi(mpfr_prec_t bits);
  static MpReal ln2(mpfr_prec_t bits);

  MpReal(const MpReal& other);
  MpReal(MpReal&& other) noexcept;
  MpReal& operator=(const MpReal& other);
  MpReal& operator=(MpReal&& other) noexcept;
  ~MpReal();

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  int digits() const { return bits_to_digits(precision()); }

  /// Copy rounded (or exactly extended) to `bits`.
  MpReal with_precision(mpfr_prec_t bits) const;

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const;
  long to_long() const;  // rounds to nearest
  /// log10|x|, finite even when |x| is far outside the double range.
  double log10_abs() const;
  /// Scientific decimal string with `digits` significant digits.
  /// `digits == 0` emits enough digits to parse back to the identical value.
  std::string to_string(int digits = 0) const;

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_integer() const { return mpfr_integer_p(v_) != 0; }
  /// Binary exponent e with |x| in [2^(e-1), 2^e).
  long exponent2() const { return static_cast<long>(mpfr_get_exp(v_)); }

  MpReal operator-() const;

  MpReal& operator+=(const MpReal& rhs);
  MpReal& operator-=(const MpReal& rhs);
  MpReal& operator*=(const MpReal& rhs);
  MpReal& operator/=(const MpReal& rhs);
  template <typename S>
    requires std::is_arithmetic_v<S>
  MpReal& operator+=(S rhs) {
    if constexpr (std::is_integral_v<S>) mpfr_add_si(v_, v_, static_cast<long>(rhs), MPFR_RNDN);
    else mpfr_add_d(v_, v_, static_cast<double>(rhs), MPFR_RNDN);
    return *this;
  }
  template <typename S>
    requires std::is_arithmetic_v<S>
  MpReal& operator-=(S rhs) {
    if constexpr (std::is_integral_v<S>) mpfr_sub_si(v_, v_, static_cast<long>(rhs), MPFR_RNDN);
    else mpfr_sub_d(v_, v_, static_cast<double>(rhs), MPFR_RNDN);
    return *this;
  }
  template <typename S>
    requires std::is_arithmetic_v<S>
  MpReal& operator*=(S rhs) {
    if constexpr (std::is_integral_v<S>) mpfr_mul_si(v_, v_, static_cast<long>(rhs), MPFR_RNDN);
    else mpfr_mul_d(v_, v_, static_cast<double>(rhs), MPFR_RNDN);
    return *this;
  }
  template <typename S>
    requires std::is_arithmetic_v<S>
  MpReal& operator/=(S rhs) {
    if constexpr (std::is_integral_v<S>) mpfr_div_si(v_, v_, static_cast<long>(rhs), MPFR_RNDN);
    else mpfr_div_d(v_, v_, static_cast<double>(rhs), MPFR_RNDN);
    return *this;
  }

  friend bool operator==(const MpReal& x, const MpReal& y) { return mpfr_equal_p(x.v_, y.v_) != 0; }
  friend std::partial_ordering operator<=>(const MpReal& x, const MpReal& y);
  friend bool operator==(const MpReal& x, double y) { return !x.is_nan() && mpfr_cmp_d(x.v_, y) == 0; }
  friend std::partial_ordering operator<=>(const MpReal& x, double y);
  friend bool operator==(const MpReal& x, long y) { return !x.is_nan() && mpfr_cmp_si(x.v_, y) == 0; }
  friend bool operator==(const MpReal& x, int y) { return x == static_cast<long>(y); }
  friend std::partial_ordering operator<=>(const MpReal& x, long y) { return x <=> static_cast<double>(y); }
  friend std::partial_ordering operator<=>(const MpReal& x, int y) { return x <=> static_cast<double>(y); }

 private:
  void init_if_moved(mpfr_prec_t bits);
  mpfr_t v_;
};

MpReal operator+(const MpReal& x, const MpReal& y);
MpReal operator-(const MpReal& x, const MpReal& y);
MpReal operator*(const MpReal& x, const MpReal& y);
MpReal operator/(const MpReal& x, const MpReal& y);

template <typename S>
  requires std::is_arithmetic_v<S>
MpReal operator+(MpReal x, S y) { return x += y; }
template <typename S>
  requires std::is_arithmetic_v<S>
MpReal operator+(S y, MpReal x) { return x += y; }
template <typename S>
  requires std::is_arithmetic_v<S>
MpReal operator-(MpReal x, S y) { return x -= y; }
template <typename S>
  requires std::is_arithmetic_v<S>
MpReal operator*(MpReal x, S y) { return x *= y; }
template <typename S>
  requires std::is_arithmetic_v<S>
MpReal operator*(S y, MpReal x) { return x *= y; }
template <typename S>
  requires std::is_arithmetic_v<S>
MpReal operator/(MpReal x, S y) { return x /= y; }
MpReal scalar_minus(long x, const MpReal& y);
MpReal scalar_minus(double x, const MpReal& y);
MpReal scalar_div(long x, const MpReal& y);
MpReal scalar_div(double x, const MpReal& y);
template <typename S>
  requires std::is_arithmetic_v<S>
MpReal operator-(S x, const MpReal& y) {
  if constexpr (std::is_integral_v<S>) return scalar_minus(static_cast<long>(x), y);
  else return scalar_minus(static_cast<double>(x), y);
}
template <typename S>
  requires std::is_arithmetic_v<S>
MpReal operator/(S x, const MpReal& y) {
  if constexpr (std::is_integral_v<S>) return scalar_div(static_cast<long>(x), y);
  else return scalar_div(static_cast<double>(x), y);
}

std::ostream& operator<<(std::ostream& os, const MpReal& x);

MpReal abs(const MpReal& x);
MpReal sqrt(const MpReal& x);
MpReal exp(const MpReal& x);
MpReal log(const MpReal& x);
MpReal log1p(const MpReal& x);
MpReal expm1(const MpReal& x);
MpReal pow(const MpReal& x, const MpReal& y);
MpReal pow(const MpReal& x, long n);
MpReal sin(const MpReal& x);
MpReal sin_pi(const MpReal& x);  // sin(pi x), exact zeros at integers
MpReal floor(const MpReal& x);
MpReal round(const MpReal& x);
MpReal min(const MpReal& x, const MpReal& y);
MpReal max(const MpReal& x, const MpReal& y);

/// |x - y| / |y| as a double (0 when both are zero).
double relative_difference(const MpReal& x, const MpReal& y);

}  // namespace gpc
