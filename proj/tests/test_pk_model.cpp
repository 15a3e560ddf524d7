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


#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"

#include "gpc/errors.hpp"
#include "gpc/nelder_mead.hpp"
#include "gpc/pk_model.hpp"

using namespace gpc;

namespace {

const GpcParams& dog1() {
  static const GpcParams p = GpcParams::dog1();
  return p;
}

MpReal dog1_auc() { return MpReal::parse("31.16", 400); }

ConcSeries synthetic(const std::vector<double>& times, const MpReal& auc, double noise = 0.0, unsigned seed = 1) {
  const std::vector<double> pred = predict(dog1(), auc, times);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> eps(0.0, noise);
  ConcSeries d;
  d.dose_mg_kg = 18.248;
  for (std::size_t i = 0; i < times.size(); ++i)
    d.samples.push_back({times[i], pred[i] * (1.0 + (noise > 0.0 ? eps(rng) : 0.0))});
  return d;
}

std::vector<double> log_times(double lo, double hi, int n) {
  std::vector<double> t;
  for (int i = 0; i < n; ++i) t.push_back(lo * std::pow(hi / lo, i / double(n - 1)));
  return t;
}

}  // namespace

TEST_SUITE("nelder_mead") {
  TEST_CASE("minimises a shifted quadratic") {
    const Objective f = [](const std::vector<double>& x) {
      return (x[0] - 1.0) * (x[0] - 1.0) + 10.0 * (x[1] + 2.0) * (x[1] + 2.0);
    };
    const NelderMeadResult r = nelder_mead(f, {0.0, 0.0});
    CHECK(r.converged);
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(r.x[1] == doctest::Approx(-2.0).epsilon(1e-8));
  }

  TEST_CASE("Rosenbrock valley") {
    const Objective f = [](const std::vector<double>& x) {
      return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
    };
    const NelderMeadResult r = nelder_mead(f, {-1.2, 1.0});
    CHECK(r.converged);
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-6));
  }

  TEST_CASE("iteration cap and non-finite values") {
    const Objective f = [](const std::vector<double>& x) { return x[0] < -5.0 ? NAN : std::fabs(x[0]); };
    NelderMeadOptions o;
    o.max_iterations = 3;
    const NelderMeadResult r = nelder_mead(f, {3.0}, o);
    CHECK_FALSE(r.converged);
    CHECK(r.iterations == 3);
    CHECK_THROWS_AS(nelder_mead(f, {}), DomainError);
  }
}

TEST_SUITE("pk_model") {
  TEST_CASE("concentration is AUC times the density") {
    const MpReal t(1L, 300);
    CHECK(concentration(dog1(), dog1_auc(), dog1().beta).is_zero());
    const MpReal c = concentration(dog1(), dog1_auc(), t);
    CHECK(relative_difference(c, gpc_eval(dog1(), t).value * dog1_auc()) < 1e-60);
    const MpReal c2 = concentration(dog1(), dog1_auc() * 2L, t);
    CHECK(relative_difference(c2, c * 2L) < 1e-60);
    CHECK_THROWS_AS(concentration(dog1(), MpReal(0L, 64), t), DomainError);
  }

  TEST_CASE("rrms loss worked cases") {
    ConcSeries d;
    const MpReal t(2L, 300);
    const double pred = concentration(dog1(), dog1_auc(), t).to_double();
    d.samples.push_back({2.0, pred});
    CHECK(rrms_loss(dog1(), dog1_auc(), d) < 1e-15);
    d.samples[0].conc_mg_per_L = pred * 1.1;
    CHECK(rrms_loss(dog1(), dog1_auc(), d) == doctest::Approx(0.1).epsilon(1e-12));
  }

  TEST_CASE("rrms loss is invariant under sample reordering") {
    ConcSeries d = synthetic(log_times(0.33, 72.0, 9), dog1_auc(), 0.05, 3);
    const double base = rrms_loss(dog1(), dog1_auc(), d);
    std::reverse(d.samples.begin(), d.samples.end());
    CHECK(rrms_loss(dog1(), dog1_auc(), d) == doctest::Approx(base).epsilon(1e-14));
  }

  TEST_CASE("rrms loss is smooth in the AUC scale") {
    const ConcSeries d = synthetic(log_times(0.33, 72.0, 9), dog1_auc(), 0.05, 5);
    auto loss = [&](double eps) {
      return rrms_loss(dog1(), dog1_auc() * (1.0 + eps), d);
    };
    const double h = 1e-4;
    for (double eps : {-0.2, -0.05, 0.0, 0.1}) {
      const double d1 = (loss(eps + h) - loss(eps - h)) / (2 * h);
      const double d2 = (loss(eps + 2 * h) - loss(eps - 2 * h)) / (4 * h);
      CHECK(d1 == doctest::Approx(d2).epsilon(1e-5));
    }
  }

  TEST_CASE("a vanishing prediction is a data error") {
    ConcSeries d;
    d.samples.push_back({0.001, 1.0});
    CHECK_THROWS_AS(rrms_loss(dog1(), dog1_auc(), d), DataError);
  }

  TEST_CASE("clearance") {
    CHECK(clearance(18.248, 31.16) == doctest::Approx(9.76).epsilon(0.001));
    CHECK(clearance(0.0, 31.16) == 0.0);
    CHECK(clearance(10.0, 40.0) == doctest::Approx(clearance(10.0, 20.0) / 2.0));
    CHECK_THROWS_AS(clearance(1.0, 0.0), DomainError);
  }

  TEST_CASE("r squared") {
    CHECK(r_squared({1, 2, 3}, {1, 2, 3}) == 1.0);
    CHECK(r_squared({1, 2, 3}, {2, 2, 2}) == 0.0);
    CHECK(r_squared({1, 2, 3, 4}, {1.1, 1.9, 3.2, 3.9}) == doctest::Approx(1.0 - 0.07 / 5.0));
  }

  TEST_CASE("series and config validation") {
    ConcSeries d;
    CHECK_THROWS_AS(d.validate(), DataError);
    d.samples = {{1.0, 2.0}, {1.0, 3.0}};
    CHECK_THROWS_AS(d.validate(), DataError);
    d.samples = {{1.0, 2.0}, {2.0, -3.0}};
    CHECK_THROWS_AS(d.validate(), DataError);
    FitConfig cfg;
    cfg.a = {1.0, 0.5};
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = FitConfig{};
    cfg.alpha = {0.5, 1.5};
    CHECK_THROWS_AS(cfg.validate(), DomainError);
  }

  TEST_CASE("short fit honours bounds and is deterministic") {
    const ConcSeries d = synthetic(log_times(1.0 / 3.0, 72.0, 8), dog1_auc(), 0.05, 9);
    FitConfig cfg = FitConfig::for_data(d);
    cfg.restarts = 2;
    cfg.max_iterations = 150;
    cfg.seed = 42;
    const FitResult f1 = fit_nelder_mead(d, cfg);
    const FitResult f2 = fit_nelder_mead(d, cfg);
    CHECK(f1.params.a == f2.params.a);
    CHECK(f1.auc == f2.auc);
    const double beta_s = f1.params.beta.to_double() * 3600.0;
    CHECK(beta_s >= 25.0 - 1e-9);
    CHECK(beta_s <= 30.0 + 1e-9);
    CHECK(f1.rrms >= 0.0);
    CHECK(f1.r_squared >= 0.0);
    CHECK(f1.r_squared <= 1.0);
    CHECK(f1.auc > 0.0);
  }
}
