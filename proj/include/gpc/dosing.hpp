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

#include <vector>

#include "gpc/gpc.hpp"

namespace gpc {

struct DoseRegimen {
  double dose_mg_kg = 0.0;
  double interval_h = 0.0;
  int count = 1;

  /// Throws DomainError unless dose > 0, interval > 0 and count >= 1.
  void validate() const;
};

/// A fitted single-dose concentration model: `auc` belongs to a bolus of
/// `reference_dose_mg_kg`, and other doses scale it linearly.
struct DoseResponse {
  GpcParams params;
  MpReal auc;
  double reference_dose_mg_kg = 0.0;
};

struct IntervalSummary {
  int index = 0;  // 1-based dose number
  double peak_time_h = 0.0;
  double peak_conc = 0.0;
  double trough_conc = 0.0;  // just before the next scheduled dose
  double peak_doses_retained = 0.0;
  double trough_doses_retained = 0.0;
  double mean_doses_retained = 0.0;
};

struct MultidoseReport {
  std::vector<IntervalSummary> intervals;
  /// Doses administered minus the mean retained over the final interval.
  double doses_eliminated = 0.0;
};

/// Superposed concentration at time t (h) after the first dose.
MpReal conc_multidose(const DoseResponse& model, const DoseRegimen& regimen, const MpReal& t,
                      const PrecisionContext& ctx = {});

/// Body burden in units of one dose: sum over given doses of 1 - CDF.
MpReal retained_doses(const GpcParams& p, const DoseRegimen& regimen, const MpReal& t,
                      const PrecisionContext& ctx = {});

/// Mean of retained_doses over [t1, t2], exact through the super-CDF.
MpReal mean_retained_doses(const GpcParams& p, const DoseRegimen& regimen, const MpReal& t1, const MpReal& t2,
                           const PrecisionContext& ctx = {});

/// Per-interval peak, trough and mean body burden for every dose.
MultidoseReport interval_summary(const DoseResponse& model, const DoseRegimen& regimen,
                                 const PrecisionContext& ctx = {});

}  // namespace gpc
