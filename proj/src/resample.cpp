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


#include "gpc/resample.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <optional>
#include <numeric>
#include <thread>

#include <boost/math/distributions/students_t.hpp>

#include "gpc/errors.hpp"

namespace gpc {

namespace {

struct Moments {
  double mean;
  double sd;  // n - 1 denominator
};

Moments moments(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return {mean, x.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0};
}

void check_level(double level) {
  if (!(level > 0.0 && level < 1.0)) throw DomainError("confidence level must lie in (0, 1)");
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// D'Agostino & Stephens (1986) p-value for the adjusted statistic.
double anderson_darling_p(double a2) {
  if (a2 >= 0.6) return std::exp(1.2937 - 5.709 * a2 + 0.0186 * a2 * a2);
  if (a2 >= 0.34) return std::exp(0.9177 - 4.279 * a2 - 1.38 * a2 * a2);
  if (a2 >= 0.2) return 1.0 - std::exp(-8.318 + 42.796 * a2 - 59.938 * a2 * a2);
  return 1.0 - std::exp(-13.436 + 101.14 * a2 - 223.73 * a2 * a2);
}

}  // namespace

IntervalEstimate ci_student_n(const std::vector<double>& samples, double level) {
  check_level(level);
  if (samples.size() < 2) throw DomainError("ci_student_n needs at least two samples");
  const Moments m = moments(samples);
  const double n = static_cast<double>(samples.size());
  const boost::math::students_t dist(n);
  const double half = boost::math::quantile(dist, 0.5 + level / 2.0) * m.sd / std::sqrt(n);
  return {m.mean - half, m.mean + half, level, IntervalMethod::student_n};
}

double weibull_quantile(std::vector<double> samples, double p) {
  const std::size_t n = samples.size();
  if (n == 0) throw DomainError("weibull_quantile needs samples");
  double h = p * static_cast<double>(n + 1);
  if (std::fabs(h - std::round(h)) < 1e-9) h = std::round(h);
  if (h < 1.0 || h > static_cast<double>(n))
    throw DomainError("quantile outside the attainable range for this sample size");
  std::sort(samples.begin(), samples.end());
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const double frac = h - static_cast<double>(lo);
  if (lo >= n) return samples[n - 1];
  return samples[lo - 1] + frac * (samples[lo] - samples[lo - 1]);
}

IntervalEstimate ci_weibull_quantile(const std::vector<double>& samples, double level) {
  check_level(level);
  const double tail = (1.0 - level) / 2.0;
  if (static_cast<double>(samples.size() + 1) * tail < 1.0)
    throw DomainError("too few samples for a Weibull quantile interval at this level");
  return {weibull_quantile(samples, tail), weibull_quantile(samples, 1.0 - tail), level,
          IntervalMethod::weibull_quantile};
}

double sd_correction(int n) {
  if (n < 2) throw DomainError("sd_correction needs n >= 2");
  const double h = (n - 1) / 2.0;
  return std::sqrt(h) * std::exp(std::lgamma(h) - std::lgamma(n / 2.0));
}

CvEstimate cv_sd_corrected(const std::vector<double>& samples) {
  if (samples.size() < 2) throw DomainError("cv_sd_corrected needs at least two samples");
  const Moments m = moments(samples);
  if (std::fabs(m.mean) < 1e-12) throw DomainError("coefficient of variation is unstable for a mean near zero");
  const double sd = sd_correction(static_cast<int>(samples.size())) * m.sd;
  return {sd / std::fabs(m.mean), sd};
}

ResidualReport residual_checks(const std::vector<double>& residuals, const std::vector<double>& predictions) {
  const std::size_t n = residuals.size();
  if (n != predictions.size()) throw DataError("residuals and predictions differ in length");
  if (n < 8) throw DataError("residual checks need at least 8 residuals");
  ResidualReport rep;
  rep.n = n;
  const Moments m = moments(residuals);
  if (!(m.sd > 1e-300)) {
    rep.degenerate = true;
    return rep;
  }

  std::vector<double> z(residuals);
  std::sort(z.begin(), z.end());
  double s = 0.0;
  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = std::clamp(normal_cdf((z[i] - m.mean) / m.sd), 1e-300, 1.0 - 1e-16);
    const double hi = std::clamp(normal_cdf((z[n - 1 - i] - m.mean) / m.sd), 1e-300, 1.0 - 1e-16);
    s += (2.0 * static_cast<double>(i) + 1.0) * (std::log(lo) + std::log1p(-hi));
  }
  const double a2 = -nd - s / nd;
  rep.anderson_darling = a2 * (1.0 + 0.75 / nd + 2.25 / (nd * nd));
  rep.normality_p = std::clamp(anderson_darling_p(rep.anderson_darling), 0.0, 1.0);
  rep.normal = rep.normality_p >= 0.05;

  std::vector<double> y(n);
  std::transform(residuals.begin(), residuals.end(), y.begin(), [](double r) { return std::fabs(r); });
  const Moments mx = moments(predictions);
  const Moments my = moments(y);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (predictions[i] - mx.mean) * (y[i] - my.mean);
    sxx += (predictions[i] - mx.mean) * (predictions[i] - mx.mean);
  }
  if (!(sxx > 0.0)) {
    rep.degenerate = true;
    return rep;
  }
  rep.slope = sxy / sxx;
  const double intercept = my.mean - rep.slope * mx.mean;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - intercept - rep.slope * predictions[i];
    sse += e * e;
  }
  const double se = std::sqrt(sse / (nd - 2.0) / sxx);
  if (se > 0.0) {
    rep.slope_t = rep.slope / se;
    const boost::math::students_t dist(nd - 2.0);
    rep.slope_p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(rep.slope_t)));
  } else {
    rep.slope_t = rep.slope == 0.0 ? 0.0 : HUGE_VAL;
    rep.slope_p = rep.slope == 0.0 ? 1.0 : 0.0;
  }
  rep.homoscedastic = rep.slope_p >= 0.05;
  return rep;
}

std::vector<double> proportional_residuals(const ConcSeries& data, const std::vector<double>& predictions) {
  if (data.samples.size() != predictions.size()) throw DataError("predictions do not match the series");
  std::vector<double> r;
  r.reserve(predictions.size());
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (!(predictions[i] > 0.0)) throw DataError("model prediction vanishes at a sample time");
    r.push_back((data.samples[i].conc_mg_per_L - predictions[i]) / predictions[i]);
  }
  return r;
}

ResidualReport residual_checks(const FitResult& fit, const ConcSeries& data, const PrecisionContext& ctx) {
  std::vector<double> times;
  for (const Sample& s : data.samples) times.push_back(s.time_h);
  const std::vector<double> pred = predict(fit.params, fit.auc, times, ctx);
  return residual_checks(proportional_residuals(data, pred), pred);
}

ConcSeries make_replicate(const ConcSeries& data, const std::vector<double>& predictions,
                          const std::vector<double>& residuals, std::mt19937_64& rng) {
  if (residuals.empty() || predictions.size() != data.samples.size())
    throw DataError("replicate needs one prediction per sample and a residual pool");
  std::uniform_int_distribution<std::size_t> pick(0, residuals.size() - 1);
  ConcSeries out = data;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    double obs = 0.0;
    for (int attempt = 0; attempt < 1000 && !(obs > 0.0); ++attempt)
      obs = predictions[i] * (1.0 + residuals[pick(rng)]);
    if (!(obs > 0.0)) throw DataError("could not draw a positive replicate concentration");
    out.samples[i].conc_mg_per_L = obs;
  }
  return out;
}

std::mt19937_64 replicate_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

BootstrapRun bootstrap_run(const FitResult& fit, const ConcSeries& data, int n, const FitConfig& cfg,
                           std::uint64_t seed, const PrecisionContext& ctx, int workers) {
  if (n < 2) throw DomainError("bootstrap needs at least two replicates");
  data.validate();
  std::vector<double> times;
  for (const Sample& s : data.samples) times.push_back(s.time_h);
  const std::vector<double> pred = predict(fit.params, fit.auc, times, ctx);
  const std::vector<double> resid = proportional_residuals(data, pred);

  std::vector<std::optional<ReplicateRow>> rows(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < n; i = next++) {
      const auto start = std::chrono::steady_clock::now();
      std::mt19937_64 rng = replicate_stream(seed, static_cast<std::uint64_t>(i));
      try {
        const ConcSeries rep = make_replicate(data, pred, resid, rng);
        FitConfig c = cfg;
        c.seed = rng();
        const FitResult f = fit_nelder_mead(rep, c, ctx);
        if (!f.converged) continue;
        ReplicateRow row;
        row.a = f.params.a.to_double();
        row.b = f.params.b.to_double();
        row.alpha = f.params.alpha.to_double();
        row.beta_h = f.params.beta.to_double();
        row.auc = f.auc.to_double();
        row.clearance = f.clearance;
        row.rrms = f.rrms;
        row.r_squared = f.r_squared;
        row.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        rows[static_cast<std::size_t>(i)] = row;
      } catch (const Error&) {
      }
    }
  };
  const int threads = std::clamp(workers, 1, n);
  std::vector<std::thread> pool;
  for (int w = 1; w < threads; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  BootstrapRun run;
  run.requested = n;
  run.seed = seed;
  for (auto& r : rows) {
    if (r) run.replicates.push_back(*r);
    else ++run.failed;
  }
  return run;
}

}  // namespace gpc
