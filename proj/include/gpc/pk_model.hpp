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
#include <string>
#include <vector>

#include "gpc/gpc.hpp"

namespace gpc {

struct Sample {
  double time_h;
  double conc_mg_per_L;
};

/// Concentration-time series for one subject after a single bolus.
struct ConcSeries {
  std::vector<Sample> samples;
  std::string subject_id;
  double dose_mg_kg = 0.0;

  /// Throws DataError unless times are positive and strictly increasing and
  /// concentrations are positive.
  void validate() const;
};

struct Bounds {
  double lower;
  double upper;
};

struct FitConfig {
  Bounds a{0.05, 2.0};
  Bounds b{0.02, 5.0};
  Bounds alpha{0.02, 0.98};
  Bounds beta_h{25.0 / 3600.0, 30.0 / 3600.0};
  Bounds auc{1.0, 1000.0};
  int restarts = 8;
  int max_iterations = 20010;
  double diameter_tol = 1e-10;
  double restart_tol = 1e-4;  // diameter at which each exploratory start stops
  std::uint64_t seed = 1;

  /// Throws DomainError on empty or inverted bounds.
  void validate() const;
  /// Defaults with the AUC range centred on a trapezoid estimate from `data`.
  static FitConfig for_data(const ConcSeries& data);
};

struct FitResult {
  GpcParams params;
  MpReal auc;
  double clearance = 0.0;  // ml/min/kg
  double rrms = 0.0;
  double r_squared = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// auc * GPC(t).
MpReal concentration(const GpcParams& p, const MpReal& auc, const MpReal& t, const PrecisionContext& ctx = {});
MpReal concentration(const FitResult& fit, const MpReal& t, const PrecisionContext& ctx = {});

/// Model predictions at the sample times of `data`.
std::vector<double> predict(const GpcParams& p, const MpReal& auc, const std::vector<double>& times_h,
                            const PrecisionContext& ctx = {});

/// Relative root-mean-square error. Throws DataError when a prediction vanishes.
double rrms_loss(const GpcParams& p, const MpReal& auc, const ConcSeries& data, const PrecisionContext& ctx = {});

/// 1 - SS_res/SS_tot on concentrations.
double r_squared(const std::vector<double>& observed, const std::vector<double>& predicted);

/// dose / auc converted from L/(h kg) to ml/(min kg).
double clearance(double dose_mg_kg, double auc_mg_h_per_L);

/// Bounded global fit of (a, b, alpha, beta, AUC) by Nelder-Mead from
/// Latin-hypercube starts. Throws DataError or ConvergenceError.
FitResult fit_nelder_mead(const ConcSeries& data, const FitConfig& cfg, const PrecisionContext& ctx = {});

}  // namespace gpc
