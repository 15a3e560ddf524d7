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

#include <functional>
#include <vector>

#include "gpc/mp_real.hpp"

namespace gpc {

/// Integrand for tanh-sinh quadrature. Receives the abscissa and its exact
/// distances to both interval ends, so endpoint singularities can be
/// evaluated without cancellation.
using Integrand = std::function<MpReal(const MpReal& x, const MpReal& from_lo, const MpReal& to_hi)>;

struct QuadratureResult {
  MpReal value;
  double error_log10 = 0.0;  // log10 of the estimated relative error
  int levels = 0;
  long evaluations = 0;
};

/// Double-exponential quadrature of f over [lo, hi] at `bits` precision,
/// refined until successive levels agree to `tol_digits` significant digits.
/// Throws ConvergenceError when the tolerance is not met.
QuadratureResult tanh_sinh(const Integrand& f, const MpReal& lo, const MpReal& hi, int tol_digits,
                           mpfr_prec_t bits);

/// Sum of tanh_sinh over consecutive pieces [points[i], points[i+1]].
QuadratureResult tanh_sinh_pieces(const Integrand& f, const std::vector<MpReal>& points, int tol_digits,
                                  mpfr_prec_t bits);

}  // namespace gpc
