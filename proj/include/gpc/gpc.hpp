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

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gpc/mp_real.hpp"

namespace gpc {

/// Gamma-Pareto type I convolution parameters. Times are in hours.
struct GpcParams {
  MpReal a;      // gamma shape
  MpReal b;      // gamma rate, 1/h
  MpReal alpha;  // Pareto shape
  MpReal beta;   // Pareto location, h

  /// Throws DomainError unless all four are positive and alpha is not
  /// within 1e-12 of an integer.
  void validate() const;

  /// Parses decimal strings at `bits` precision and validates.
  static GpcParams parse(std::string_view a, std::string_view b, std::string_view alpha,
                         std::string_view beta_h, mpfr_prec_t bits = kStorageBits);
  /// Metformin dog 1 values (beta = 25 s).
  static GpcParams dog1();

  /// Precision used for parameter storage; wide enough for the long
  /// two-pass short-t runs.
  static constexpr mpfr_prec_t kStorageBits = 8192;
};

enum class Branch { zero, short_t, long_t };
std::string_view to_string(Branch b);

/// Member of the GPC family being evaluated.
enum class Quantity { density, cdf, supercdf, derivative };
std::string_view to_string(Quantity q);

struct EvalDiagnostics {
  Branch branch = Branch::zero;
  long terms_summed = 0;
  long max_term_log10 = 0;     // decimal exponent of the largest summand
  MpReal max_term;             // that summand, rounded to 64 bits
  int working_precision = 65;  // target + |exponent| requirement, in digits
  double wall_time_s = 0.0;
};

struct EvalResult {
  MpReal value;
  EvalDiagnostics diagnostics;
};

/// Evaluator bound to one parameter set and precision context. Constants
/// that depend only on the parameters are computed once.
class GpcModel {
 public:
  GpcModel(GpcParams params, PrecisionContext ctx = {});

  const GpcParams& params() const { return params_; }
  const PrecisionContext& context() const { return ctx_; }

  /// Combined algorithm: 0 for t <= beta, short-t below 4 beta, long-t above.
  EvalResult eval(Quantity q, const MpReal& t) const;
  /// Short-t series with the two-pass precision scheme.
  EvalResult short_t(Quantity q, const MpReal& t) const;
  /// First pass of short_t only: term count and largest-term exponent.
  EvalDiagnostics short_t_scan(Quantity q, const MpReal& t) const;
  /// Long-t series plus its closed-form terms.
  EvalResult long_t(Quantity q, const MpReal& t) const;
  /// The density asymptote (the csc term of the long-t form).
  MpReal asymptote(const MpReal& t) const;

  /// Scaled summands of each series in summation order, for inspection.
  std::vector<MpReal> short_t_terms(Quantity q, const MpReal& t) const;
  std::vector<MpReal> long_t_terms(Quantity q, const MpReal& t) const;

  /// Convenience: density at a time given in hours as a double.
  MpReal density(double t_h) const;

  struct Constants;

 private:
  GpcParams params_;
  PrecisionContext ctx_;
  std::shared_ptr<const Constants> consts_;
};

EvalResult gpc_short(const GpcParams& p, const MpReal& t, const PrecisionContext& ctx = {});
EvalResult gpc_long(const GpcParams& p, const MpReal& t, const PrecisionContext& ctx = {});
EvalResult gpc_eval(const GpcParams& p, const MpReal& t, const PrecisionContext& ctx = {});
EvalResult gpc_cdf(const GpcParams& p, const MpReal& t, const PrecisionContext& ctx = {});
EvalResult gpc_supercdf(const GpcParams& p, const MpReal& t, const PrecisionContext& ctx = {});
EvalResult gpc_deriv(const GpcParams& p, const MpReal& t, const PrecisionContext& ctx = {});
MpReal gpc_asymptote(const GpcParams& p, const MpReal& t, const PrecisionContext& ctx = {});

/// -ln 2 f(t) / f'(t). Throws SingularPointError when |t f'(t)/f(t)| < 1e-9.
MpReal half_life(const GpcParams& p, const MpReal& t, const PrecisionContext& ctx = {});

/// Time of the density maximum, to 1e-12 h. Throws NotFoundError when the
/// derivative has no sign change in (beta, 1000 h] or changes sign twice.
MpReal peak_time(const GpcParams& p, const PrecisionContext& ctx = {});

/// Direct quadrature of the gamma * Pareto convolution integral.
MpReal conv_oracle(const GpcParams& p, const MpReal& t, const PrecisionContext& ctx = {});

}  // namespace gpc
