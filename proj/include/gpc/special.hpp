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

#include "gpc/mp_real.hpp"

namespace gpc {

/// True when x is 0, -1, -2, ...
bool is_nonpositive_integer(const MpReal& x);

/// ln Γ(x) for x > 0.
MpReal ln_gamma(const MpReal& x, const PrecisionContext& ctx);
/// Γ(x) for any real x that is not a pole.
MpReal gamma_fn(const MpReal& x, const PrecisionContext& ctx);
/// 1/Γ(x); zero at the poles.
MpReal reciprocal_gamma(const MpReal& x, const PrecisionContext& ctx);
/// Rising factorial (x)_k = x (x+1) ... (x+k-1).
MpReal pochhammer(const MpReal& x, long k, const PrecisionContext& ctx);
/// Complete beta Γ(A)Γ(B)/Γ(A+B), continued to negative non-integer arguments.
MpReal beta_fn(const MpReal& A, const MpReal& B, const PrecisionContext& ctx);

/// Incomplete beta B_z(A, B) for 0 <= z < 1, continued analytically in B
/// (B may be negative). A and B must not be non-positive integers.
MpReal inc_beta_gen(const MpReal& z, const MpReal& A, const MpReal& B, const PrecisionContext& ctx);

/// Kummer's function 1F1(a; b; z). b must not be a non-positive integer.
MpReal hyp1f1(const MpReal& a, const MpReal& b, const MpReal& z, const PrecisionContext& ctx);
/// 1F1(a; b; z) / Γ(b), entire in b.
MpReal hyp1f1_reg(const MpReal& a, const MpReal& b, const MpReal& z, const PrecisionContext& ctx);

/// Regularised lower incomplete gamma P(a, x).
MpReal gamma_p(const MpReal& a, const MpReal& x, const PrecisionContext& ctx);
/// Regularised upper incomplete gamma Q(a, x) = 1 - P(a, x).
MpReal gamma_q(const MpReal& a, const MpReal& x, const PrecisionContext& ctx);

}  // namespace gpc
