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


#include "gpc/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gpc/errors.hpp"

namespace gpc {

namespace {

struct Vertex {
  std::vector<double> x;
  double fx;
};

double diameter(const std::vector<Vertex>& s) {
  double d = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i)
    for (std::size_t j = 0; j < s[i].x.size(); ++j) d = std::max(d, std::fabs(s[i].x[j] - s[0].x[j]));
  return d;
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, const std::vector<double>& x0, const NelderMeadOptions& opts) {
  const std::size_t n = x0.size();
  if (n == 0) throw DomainError("nelder_mead needs at least one coordinate");
  NelderMeadResult out;
  auto eval = [&](const std::vector<double>& x) {
    ++out.evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  std::vector<Vertex> s;
  s.push_back({x0, eval(x0)});
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x = x0;
    x[i] += opts.initial_step;
    s.push_back({x, eval(x)});
  }
  auto by_value = [](const Vertex& l, const Vertex& r) { return l.fx < r.fx; };

  std::vector<double> centroid(n), trial(n);
  auto along = [&](double coef) {
    for (std::size_t j = 0; j < n; ++j) trial[j] = centroid[j] + coef * (s[n].x[j] - centroid[j]);
    return trial;
  };

  while (true) {
    std::sort(s.begin(), s.end(), by_value);
    if (diameter(s) < opts.diameter_tol) {
      out.converged = true;
      break;
    }
    if (out.iterations >= opts.max_iterations) break;
    ++out.iterations;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) centroid[j] += s[i].x[j] / static_cast<double>(n);

    const std::vector<double> xr = along(-1.0);
    const double fr = eval(xr);
    if (fr < s[0].fx) {
      const std::vector<double> xe = along(-2.0);
      const double fe = eval(xe);
      s[n] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
      continue;
    }
    if (fr < s[n - 1].fx) {
      s[n] = {xr, fr};
      continue;
    }
    const bool outside = fr < s[n].fx;
    const std::vector<double> xc = along(outside ? -0.5 : 0.5);
    const double fc = eval(xc);
    if (fc < (outside ? fr : s[n].fx)) {
      s[n] = {xc, fc};
      continue;
    }
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 0; j < n; ++j) s[i].x[j] = s[0].x[j] + 0.5 * (s[i].x[j] - s[0].x[j]);
      s[i].fx = eval(s[i].x);
    }
  }
  out.x = s[0].x;
  out.fx = s[0].fx;
  return out;
}

}  // namespace gpc
