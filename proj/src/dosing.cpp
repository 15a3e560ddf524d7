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


#include "gpc/dosing.hpp"

#include <algorithm>
#include <cmath>

#include "gpc/errors.hpp"

namespace gpc {

namespace {

constexpr double kGoldenTol = 1e-9;  // h

// Number of doses given at or before t.
long doses_given(const DoseRegimen& r, const MpReal& t) {
  if (t < 0.0) return 0;
  const long k = floor(t / r.interval_h).to_long() + 1;
  return std::min<long>(k, r.count);
}

MpReal superpose(const GpcModel& model, Quantity q, const DoseRegimen& r, const MpReal& t) {
  MpReal sum(0L, model.context().working_bits());
  const long n = doses_given(r, t);
  for (long j = 0; j < n; ++j) sum += model.eval(q, t - static_cast<double>(j) * r.interval_h).value;
  return sum;
}

MpReal concentration_scale(const DoseResponse& m, const DoseRegimen& r) {
  if (!(m.auc > 0.0)) throw DomainError("auc must be positive");
  if (!(m.reference_dose_mg_kg > 0.0)) throw DomainError("reference dose must be positive");
  return m.auc * (r.dose_mg_kg / m.reference_dose_mg_kg);
}

MpReal retained(const GpcModel& model, const DoseRegimen& r, const MpReal& t) {
  return static_cast<double>(doses_given(r, t)) - superpose(model, Quantity::cdf, r, t);
}

MpReal mean_retained(const GpcModel& model, const DoseRegimen& r, const MpReal& t1, const MpReal& t2) {
  const MpReal width = t2 - t1;
  if (!(width > 0.0)) throw DomainError("interval must have positive length");
  const long n = doses_given(r, t1);
  MpReal sum(0L, model.context().working_bits());
  for (long j = 0; j < n; ++j) {
    const double shift = static_cast<double>(j) * r.interval_h;
    sum += model.eval(Quantity::supercdf, t2 - shift).value - model.eval(Quantity::supercdf, t1 - shift).value;
  }
  return static_cast<double>(n) - sum / width;
}

}  // namespace

void DoseRegimen::validate() const {
  if (!(dose_mg_kg > 0.0) || !(interval_h > 0.0) || count < 1)
    throw DomainError("regimen needs dose > 0, interval > 0 and count >= 1");
}

MpReal conc_multidose(const DoseResponse& m, const DoseRegimen& r, const MpReal& t, const PrecisionContext& ctx) {
  r.validate();
  const GpcModel model(m.params, ctx);
  return superpose(model, Quantity::density, r, t) * concentration_scale(m, r);
}

MpReal retained_doses(const GpcParams& p, const DoseRegimen& r, const MpReal& t, const PrecisionContext& ctx) {
  r.validate();
  return retained(GpcModel(p, ctx), r, t);
}

MpReal mean_retained_doses(const GpcParams& p, const DoseRegimen& r, const MpReal& t1, const MpReal& t2,
                           const PrecisionContext& ctx) {
  r.validate();
  return mean_retained(GpcModel(p, ctx), r, t1, t2);
}

MultidoseReport interval_summary(const DoseResponse& m, const DoseRegimen& r, const PrecisionContext& ctx) {
  r.validate();
  const GpcModel model(m.params, ctx);
  const mpfr_prec_t bits = ctx.working_bits();
  const MpReal scale = concentration_scale(m, r);
  const double beta = m.params.beta.to_double();
  const double tau = r.interval_h;
  auto conc = [&](double t) { return superpose(model, Quantity::density, r, MpReal(t, bits)) * scale; };

  MultidoseReport report;
  for (int k = 0; k < r.count; ++k) {
    const double start = k * tau;
    const double end = (k + 1) * tau;

    // Golden-section maximisation; the newest dose is silent before start + beta.
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = start + beta;
    double hi = std::min(start + 4.0 * beta + tau / 2.0, end);
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    MpReal f1 = conc(x1), f2 = conc(x2);
    while (hi - lo > kGoldenTol) {
      if (f1 > f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - invphi * (hi - lo);
        f1 = conc(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + invphi * (hi - lo);
        f2 = conc(x2);
      }
    }
    IntervalSummary s;
    s.index = k + 1;
    s.peak_time_h = f1 > f2 ? x1 : x2;
    s.peak_conc = max(f1, f2).to_double();
    const MpReal t_start(start, bits), t_end(end, bits);
    // Doses at `end` contribute nothing yet, so evaluating there gives the pre-dose value.
    s.trough_conc = conc(end).to_double();
    s.peak_doses_retained = retained(model, r, t_start).to_double();
    s.trough_doses_retained = retained(model, r, t_end).to_double() - (k + 1 < r.count ? 1.0 : 0.0);
    s.mean_doses_retained = mean_retained(model, r, t_start, t_end).to_double();
    report.intervals.push_back(s);
  }
  report.doses_eliminated = r.count - report.intervals.back().mean_doses_retained;
  return report;
}

}  // namespace gpc
