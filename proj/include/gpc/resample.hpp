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

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "gpc/pk_model.hpp"

namespace gpc {

enum class IntervalMethod { student_n, weibull_quantile };

struct IntervalEstimate {
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
  IntervalMethod method = IntervalMethod::student_n;
};

/// mean +/- t_n((1+level)/2) s/sqrt(n), with n (not n-1) degrees of freedom.
IntervalEstimate ci_student_n(const std::vector<double>& samples, double level = 0.95);

/// Weibull plotting-position quantile: h = p(n+1), linear between order statistics.
double weibull_quantile(std::vector<double> samples, double p);

/// Equal-tailed Weibull quantile interval. Throws DomainError when
/// (n+1)(1-level)/2 < 1.
IntervalEstimate ci_weibull_quantile(const std::vector<double>& samples, double level = 0.95);

/// c_n = sqrt((n-1)/2) Γ((n-1)/2) / Γ(n/2), the normal-theory SD bias factor.
double sd_correction(int n);

struct CvEstimate {
  double cv = 0.0;
  double sd_unbiased = 0.0;
};

/// Bias-corrected SD and coefficient of variation. Throws DomainError when
/// the mean is within 1e-12 of zero.
CvEstimate cv_sd_corrected(const std::vector<double>& samples);

struct ResidualReport {
  std::size_t n = 0;
  bool degenerate = false;         // zero spread; neither test is meaningful
  double anderson_darling = 0.0;   // A*^2 with small-sample adjustment
  double normality_p = 0.0;
  bool normal = false;             // normality_p >= 0.05
  double slope = 0.0;              // |residual| regressed on prediction
  double slope_t = 0.0;
  double slope_p = 0.0;
  bool homoscedastic = false;      // slope_p >= 0.05
};

/// Anderson-Darling normality test and slope test for heteroscedasticity.
/// Throws DataError for fewer than 8 residuals.
ResidualReport residual_checks(const std::vector<double>& residuals, const std::vector<double>& predictions);
/// Same checks on the proportional residuals of a fit.
ResidualReport residual_checks(const FitResult& fit, const ConcSeries& data, const PrecisionContext& ctx = {});

/// Proportional residuals (obs - pred) / pred.
std::vector<double> proportional_residuals(const ConcSeries& data, const std::vector<double>& predictions);

/// Synthetic series pred_i (1 + r*_i) with r* drawn with replacement from
/// `residuals`. Non-positive draws are redrawn up to 1000 times.
ConcSeries make_replicate(const ConcSeries& data, const std::vector<double>& predictions,
                          const std::vector<double>& residuals, std::mt19937_64& rng);

struct ReplicateRow {
  double a = 0.0, b = 0.0, alpha = 0.0, beta_h = 0.0;
  double auc = 0.0;
  double clearance = 0.0;
  double rrms = 0.0;
  double r_squared = 0.0;
  double wall_time_s = 0.0;
};

struct BootstrapRun {
  std::vector<ReplicateRow> replicates;  // converged fits only, in replicate order
  int requested = 0;
  int failed = 0;
  std::uint64_t seed = 0;
};

/// Random stream for replicate `index`; independent of evaluation order.
std::mt19937_64 replicate_stream(std::uint64_t seed, std::uint64_t index);

/// Model-based bootstrap: n replicates resampled from the fit residuals and
/// refit with `cfg`. Replicates are distributed over `workers` threads.
BootstrapRun bootstrap_run(const FitResult& fit, const ConcSeries& data, int n, const FitConfig& cfg,
                           std::uint64_t seed, const PrecisionContext& ctx = {}, int workers = 1);

}  // namespace gpc
