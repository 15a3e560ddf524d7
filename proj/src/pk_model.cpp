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


#include "gpc/pk_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "gpc/errors.hpp"
#include "gpc/nelder_mead.hpp"

namespace gpc {

namespace {

constexpr std::size_t kDims = 5;

// Maps an unconstrained coordinate onto [lo, hi] through lo + (hi-lo)(1+sin u)/2.
double to_bounded(double u, const Bounds& bd) { return bd.lower + (bd.upper - bd.lower) * 0.5 * (1.0 + std::sin(u)); }

double to_free(double x, const Bounds& bd) {
  const double v = std::clamp(2.0 * (x - bd.lower) / (bd.upper - bd.lower) - 1.0, -1.0, 1.0);
  return std::asin(v);
}

std::array<Bounds, kDims> bounds_of(const FitConfig& cfg) { return {cfg.a, cfg.b, cfg.alpha, cfg.beta_h, cfg.auc}; }

struct Point {
  GpcParams params;
  MpReal auc;
};

Point decode(const std::vector<double>& u, const std::array<Bounds, kDims>& bd, mpfr_prec_t bits) {
  auto mp = [&](std::size_t i) { return MpReal(to_bounded(u[i], bd[i]), bits); };
  return {GpcParams{mp(0), mp(1), mp(2), mp(3)}, mp(4)};
}

}  // namespace

void ConcSeries::validate() const {
  if (samples.empty()) throw DataError("concentration series is empty");
  double prev = 0.0;
  for (const Sample& s : samples) {
    if (!(s.time_h > prev)) throw DataError("sample times must be positive and strictly increasing");
    if (!(s.conc_mg_per_L > 0.0) || !std::isfinite(s.conc_mg_per_L))
      throw DataError("concentrations must be positive and finite");
    prev = s.time_h;
  }
}

void FitConfig::validate() const {
  for (const Bounds& bd : {a, b, alpha, beta_h, auc})
    if (!(bd.lower < bd.upper) || !std::isfinite(bd.lower) || !std::isfinite(bd.upper))
      throw DomainError("fit bounds must satisfy lower < upper");
  if (a.lower <= 0.0 || b.lower <= 0.0 || alpha.lower <= 0.0 || beta_h.lower <= 0.0 || auc.lower <= 0.0)
    throw DomainError("fit bounds must be positive");
  if (std::floor(alpha.lower) != std::floor(alpha.upper) || alpha.upper == std::ceil(alpha.upper))
    throw DomainError("alpha bounds must not contain an integer");
  if (restarts < 1 || max_iterations < 1) throw DomainError("restarts and max_iterations must be positive");
}

FitConfig FitConfig::for_data(const ConcSeries& data) {
  data.validate();
  double area = 0.0;
  const auto& s = data.samples;
  for (std::size_t i = 1; i < s.size(); ++i)
    area += 0.5 * (s[i].conc_mg_per_L + s[i - 1].conc_mg_per_L) * (s[i].time_h - s[i - 1].time_h);
  FitConfig cfg;
  if (area > 0.0) cfg.auc = {0.5 * area, 4.0 * area};
  return cfg;
}

MpReal concentration(const GpcParams& p, const MpReal& auc, const MpReal& t, const PrecisionContext& ctx) {
  if (!(auc > 0.0)) throw DomainError("auc must be positive");
  return gpc_eval(p, t, ctx).value * auc;
}

MpReal concentration(const FitResult& fit, const MpReal& t, const PrecisionContext& ctx) {
  return concentration(fit.params, fit.auc, t, ctx);
}

std::vector<double> predict(const GpcParams& p, const MpReal& auc, const std::vector<double>& times_h,
                            const PrecisionContext& ctx) {
  if (!(auc > 0.0)) throw DomainError("auc must be positive");
  const GpcModel model(p, ctx);
  const mpfr_prec_t bits = ctx.working_bits();
  std::vector<double> out;
  out.reserve(times_h.size());
  for (double t : times_h) out.push_back((model.eval(Quantity::density, MpReal(t, bits)).value * auc).to_double());
  return out;
}

double rrms_loss(const GpcParams& p, const MpReal& auc, const ConcSeries& data, const PrecisionContext& ctx) {
  const GpcModel model(p, ctx);
  const mpfr_prec_t bits = ctx.working_bits();
  MpReal sum(0L, bits);
  for (const Sample& s : data.samples) {
    const MpReal pred = model.eval(Quantity::density, MpReal(s.time_h, bits)).value * auc;
    if (pred.is_zero()) throw DataError("model prediction vanishes at a sample time");
    const MpReal rel = (MpReal(s.conc_mg_per_L, bits) - pred) / pred;
    sum += rel * rel;
  }
  return sqrt(sum / static_cast<long>(data.samples.size())).to_double();
}

double r_squared(const std::vector<double>& observed, const std::vector<double>& predicted) {
  if (observed.size() != predicted.size() || observed.empty()) throw DataError("r_squared needs paired samples");
  const double mean = std::accumulate(observed.begin(), observed.end(), 0.0) / static_cast<double>(observed.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    ss_res += (observed[i] - predicted[i]) * (observed[i] - predicted[i]);
    ss_tot += (observed[i] - mean) * (observed[i] - mean);
  }
  if (ss_tot == 0.0) return ss_res == 0.0 ? 1.0 : 0.0;
  return std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
}

double clearance(double dose_mg_kg, double auc_mg_h_per_L) {
  if (!(auc_mg_h_per_L > 0.0)) throw DomainError("auc must be positive");
  if (dose_mg_kg < 0.0) throw DomainError("dose must be non-negative");
  return dose_mg_kg / auc_mg_h_per_L * 1000.0 / 60.0;
}

FitResult fit_nelder_mead(const ConcSeries& data, const FitConfig& cfg, const PrecisionContext& ctx) {
  data.validate();
  cfg.validate();
  const auto bd = bounds_of(cfg);
  const mpfr_prec_t bits = ctx.working_bits();

  const Objective loss = [&](const std::vector<double>& u) {
    try {
      const Point pt = decode(u, bd, bits);
      return rrms_loss(pt.params, pt.auc, data, ctx);
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  // Latin-hypercube starts: one stratum per restart in every coordinate.
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto r = static_cast<std::size_t>(cfg.restarts);
  std::array<std::vector<std::size_t>, kDims> strata;
  for (auto& perm : strata) {
    perm.resize(r);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
  }

  NelderMeadOptions explore;
  explore.max_iterations = cfg.max_iterations;
  explore.diameter_tol = std::max(cfg.restart_tol, cfg.diameter_tol);
  NelderMeadResult best;
  best.fx = std::numeric_limits<double>::infinity();
  int iterations = 0;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<double> u0(kDims);
    for (std::size_t d = 0; d < kDims; ++d) {
      const double v = (static_cast<double>(strata[d][i]) + unit(rng)) / static_cast<double>(r);
      u0[d] = to_free(bd[d].lower + v * (bd[d].upper - bd[d].lower), bd[d]);
    }
    NelderMeadResult run = nelder_mead(loss, u0, explore);
    iterations += run.iterations;
    if (run.fx < best.fx) best = std::move(run);
  }
  if (!std::isfinite(best.fx)) throw ConvergenceError("every fit restart failed to evaluate the loss");

  // Refine the best start with fresh simplices until it stops improving.
  NelderMeadOptions refine;
  refine.max_iterations = cfg.max_iterations;
  refine.diameter_tol = cfg.diameter_tol;
  refine.initial_step = 1e-2;
  bool converged = false;
  for (int pass = 0; pass < 4; ++pass) {
    NelderMeadResult run = nelder_mead(loss, best.x, refine);
    iterations += run.iterations;
    converged = run.converged;
    const bool improved = run.fx < best.fx * (1.0 - 1e-12);
    if (run.fx <= best.fx) best = std::move(run);
    if (!improved) break;
    refine.initial_step = 1e-4;
  }

  const Point pt = decode(best.x, bd, bits);
  FitResult out{pt.params, pt.auc};
  out.params.validate();
  std::vector<double> times, observed;
  for (const Sample& s : data.samples) {
    times.push_back(s.time_h);
    observed.push_back(s.conc_mg_per_L);
  }
  out.rrms = rrms_loss(out.params, out.auc, data, ctx);
  out.r_squared = r_squared(observed, predict(out.params, out.auc, times, ctx));
  out.clearance = clearance(data.dose_mg_kg, out.auc.to_double());
  out.iterations = iterations;
  out.converged = converged;
  return out;
}

}  // namespace gpc
