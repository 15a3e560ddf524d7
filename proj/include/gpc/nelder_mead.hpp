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

namespace gpc {

struct NelderMeadOptions {
  int max_iterations = 20010;
  double diameter_tol = 1e-10;  // max-norm simplex diameter that stops the search
  double initial_step = 0.25;
};

struct NelderMeadResult {
  std::vector<double> x;
  double fx = 0.0;
  int iterations = 0;
  long evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Unconstrained Nelder-Mead simplex search with the standard reflection,
/// expansion, contraction and shrink coefficients (1, 2, 1/2, 1/2).
/// Non-finite objective values are treated as +infinity.
NelderMeadResult nelder_mead(const Objective& f, const std::vector<double>& x0,
                             const NelderMeadOptions& opts = {});

}  // namespace gpc
