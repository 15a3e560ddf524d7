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


#include "gpc/gpc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "gpc/errors.hpp"
#include "gpc/quadrature.hpp"
#include "gpc/special.hpp"

namespace gpc {

namespace {

constexpr long kMaxTerms = 10'000'000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Exponent offset of each family member relative to the density.
int offset(Quantity q) {
  switch (q) {
    case Quantity::density: return 0;
    case Quantity::cdf: return 1;
    case Quantity::supercdf: return 2;
    case Quantity::derivative: return -1;
  }
  return 0;
}

struct SeriesRun {
  MpReal value;
  long terms = 0;
  double max_log10 = -HUGE_VAL;
  MpReal max_term;
  double loss = 0.0;
};

double max_log10_of(std::initializer_list<const MpReal*> parts) {
  double m = -HUGE_VAL;
  for (const MpReal* p : parts)
    if (!p->is_zero()) m = std::max(m, p->log10_abs());
  return m;
}

double cancellation(double max_part, const MpReal& value) {
  if (!std::isfinite(max_part)) return 0.0;
  if (value.is_zero()) return HUGE_VAL;
  return std::max(0.0, max_part - value.log10_abs());
}

}  // namespace

struct GpcModel::Constants {
  PrecisionContext ctx;
  mpfr_prec_t bits = 0;
  MpReal a, b, alpha, beta, four_beta, neg_alpha;
  MpReal b_pow_a;      // b^a
  MpReal inv_gamma_a;  // 1/Γ(a)
  MpReal short_scale;  // α b^a β^α / Γ(a)
  MpReal csc_scale;    // -π csc(πα) b^a β^α / Γ(α)
  double b_beta = 0.0;
};

namespace {

using Constants = GpcModel::Constants;

std::shared_ptr<const Constants> make_constants(const GpcParams& p, const PrecisionContext& ctx) {
  auto c = std::make_shared<Constants>();
  c->ctx = ctx;
  c->bits = ctx.working_bits();
  const mpfr_prec_t bits = c->bits;
  c->a = p.a.with_precision(bits);
  c->b = p.b.with_precision(bits);
  c->alpha = p.alpha.with_precision(bits);
  c->beta = p.beta.with_precision(bits);
  c->four_beta = c->beta * 4L;
  c->neg_alpha = -c->alpha;
  const MpReal ln_b = log(c->b);
  const MpReal ln_beta = log(c->beta);
  const MpReal lg_a = ln_gamma(c->a, ctx);
  c->b_pow_a = exp(c->a * ln_b);
  c->inv_gamma_a = exp(-lg_a);
  const MpReal power = c->a * ln_b + c->alpha * ln_beta;
  c->short_scale = c->alpha * exp(power - lg_a);
  c->csc_scale = -MpReal::pi(bits) / sin_pi(c->alpha) * exp(power) * reciprocal_gamma(c->alpha, ctx);
  c->b_beta = (c->b * c->beta).to_double();
  return c;
}

// Walks B_z(A, -α) upward in A by the integration-by-parts recurrence,
// re-anchoring on a direct evaluation whenever the accumulated cancellation
// exceeds half the guard digits.
class BetaWalker {
 public:
  BetaWalker(const Constants& c, const MpReal& z, const MpReal& w, const MpReal& a0)
      : c_(c), z_(z), ln_z_(log(z)), ln_w_(log(w)), A_(a0) {
    budget_ = std::max(1.0, 0.5 * c.ctx.guard_digits);
    anchor();
  }

  const MpReal& A() const { return A_; }
  const MpReal& value() const { return v_; }

  void advance() {
    const MpReal av = A_ * v_;
    const MpReal num = av - z_pow_ * w_pow_;
    const MpReal denom = A_ + c_.neg_alpha;
    A_ += 1L;
    if (num.is_zero() || denom.is_zero()) {
      anchor();
      return;
    }
    loss_ += av.is_zero() ? 0.0 : av.log10_abs() - num.log10_abs();
    loss_ = std::max(loss_, 0.0);
    if (loss_ > budget_) {
      anchor();
      return;
    }
    v_ = num / denom;
    z_pow_ *= z_;
  }

 private:
  void anchor() {
    v_ = inc_beta_gen(z_, A_, c_.neg_alpha, c_.ctx);
    z_pow_ = exp(A_ * ln_z_);
    w_pow_ = exp(c_.neg_alpha * ln_w_);
    loss_ = 0.0;
  }

  const Constants& c_;
  MpReal z_, ln_z_, ln_w_, A_, v_, z_pow_, w_pow_;
  double loss_ = 0.0;
  double budget_ = 5.0;
};

SeriesRun run_short(const Constants& c, Quantity q, const MpReal& t_in, int target, std::vector<MpReal>* record) {
  const mpfr_prec_t bits = c.bits;
  const MpReal t = t_in.with_precision(bits);
  const MpReal w = c.beta / t;
  const MpReal z = (t - c.beta) / t;
  const int off = offset(q);
  const MpReal pref = c.short_scale * exp((c.a - c.alpha + static_cast<long>(off - 1)) * log(t));
  const MpReal neg_bt = -(c.b * t);
  const double bound = (c.b * (t - c.beta)).to_double();
  const bool unit_start = q == Quantity::derivative && (c.a - 1L).is_zero();
  BetaWalker walker(c, z, w, unit_start ? c.a : c.a + static_cast<long>(off));

  SeriesRun run;
  run.value = MpReal(0L, bits);
  MpReal coef(1L, bits);
  double threshold = -target;
  for (long n = 0; n < kMaxTerms; ++n) {
    MpReal factor(0L, bits);
    switch (q) {
      case Quantity::density: factor = coef * walker.value(); break;
      case Quantity::cdf: factor = coef * walker.value() / (c.a + n); break;
      case Quantity::supercdf: factor = coef * walker.value() / ((c.a + n) * (c.a + (n + 1))); break;
      case Quantity::derivative:
        factor = (unit_start && n == 0) ? coef : coef * walker.A() * walker.value();
        break;
    }
    const MpReal term = pref * factor;
    run.value += term;
    if (record) record->push_back(term);
    const double lt = term.is_zero() ? -HUGE_VAL : term.log10_abs();
    if (lt > run.max_log10) {
      run.max_log10 = lt;
      run.max_term = term.with_precision(64);
    }
    if (n == 0 && std::isfinite(lt)) threshold = -target + std::min(0.0, lt);
    if (static_cast<double>(n + 1) > bound && lt < threshold) {
      run.terms = n + 1;
      run.loss = cancellation(run.max_log10, run.value);
      return run;
    }
    coef *= neg_bt;
    coef /= n + 1;
    if (!(unit_start && n == 0)) walker.advance();
  }
  throw ConvergenceError("short-t series did not converge");
}

// Coefficients of e^{zx} (1-x)^{-s}: sum_j z^j/j! (s)_{m-j}/(m-j)!.
class KummerPolynomial {
 public:
  KummerPolynomial(const MpReal& z, const MpReal& s) : z_(z), s_(s) {
    e_.push_back(MpReal(1L, z.precision()));
    d_.push_back(MpReal(1L, z.precision()));
  }

  MpReal coefficient(long m) {
    while (static_cast<long>(e_.size()) <= m) {
      const long j = static_cast<long>(e_.size());
      e_.push_back(e_.back() * z_ / j);
      d_.push_back(d_.back() * (s_ + (j - 1)) / j);
    }
    MpReal sum(0L, z_.precision());
    double max_part = -HUGE_VAL;
    for (long j = 0; j <= m; ++j) {
      const MpReal part = e_[j] * d_[m - j];
      if (!part.is_zero()) max_part = std::max(max_part, part.log10_abs());
      sum += part;
    }
    loss_ = std::max(loss_, cancellation(max_part, sum));
    return sum;
  }

  double loss() const { return loss_; }

 private:
  MpReal z_, s_;
  std::vector<MpReal> e_, d_;
  double loss_ = 0.0;
};

struct ClosedForm {
  MpReal value;
  double max_part_log10 = -HUGE_VAL;
};

// Everything in the long-t form except the k-sum.
ClosedForm long_closed_form(const Constants& c, Quantity q, const MpReal& t, const MpReal& z, const MpReal& E) {
  const PrecisionContext& ctx = c.ctx;
  const MpReal lt = log(t);
  const MpReal am = c.a - c.alpha;
  const MpReal neg_z = -z;
  auto tpow = [&](const MpReal& e) { return exp(e * lt); };
  ClosedForm out;
  switch (q) {
    case Quantity::density: {
      const MpReal asym = c.csc_scale * tpow(am - 1L) * hyp1f1_reg(c.a, am, neg_z, ctx);
      const MpReal gam = c.b_pow_a * c.inv_gamma_a * E * tpow(c.a - 1L);
      out.value = asym + gam;
      out.max_part_log10 = max_log10_of({&asym, &gam});
      break;
    }
    case Quantity::cdf: {
      const MpReal p = gamma_p(c.a, z, ctx);
      const MpReal asym = c.csc_scale * tpow(am) * hyp1f1_reg(c.a, am + 1L, neg_z, ctx);
      out.value = p + asym;
      out.max_part_log10 = max_log10_of({&p, &asym});
      break;
    }
    case Quantity::supercdf: {
      const MpReal g1 = t * E * exp(c.a * log(z)) * c.inv_gamma_a / c.a;
      const MpReal g2 = -(c.alpha * c.beta / (c.alpha - 1L)) * gamma_p(c.a, z, ctx);
      const MpReal g3 = (t - c.a / c.b) * gamma_p(c.a + 1L, z, ctx);
      const MpReal asym = c.csc_scale * tpow(am + 1L) * hyp1f1_reg(c.a, am + 2L, neg_z, ctx);
      out.value = g1 + g2 + g3 + asym;
      out.max_part_log10 = max_log10_of({&g1, &g2, &g3, &asym});
      break;
    }
    case Quantity::derivative: {
      const MpReal gam = c.b_pow_a * c.inv_gamma_a * E * tpow(c.a - 2L) * (c.a - z - 1L);
      const MpReal m1 = hyp1f1_reg(c.a, am, neg_z, ctx) * (c.alpha + 1L);
      const MpReal m2 = hyp1f1_reg(c.a + 1L, am, neg_z, ctx) * c.a;
      const MpReal asym = -c.csc_scale * tpow(am - 2L) * (m1 - m2);
      out.value = gam + asym;
      out.max_part_log10 = max_log10_of({&gam, &asym});
      break;
    }
  }
  return out;
}

SeriesRun run_long(const Constants& c, Quantity q, const MpReal& t_in, int target, std::vector<MpReal>* record) {
  const mpfr_prec_t bits = c.bits;
  const MpReal t = t_in.with_precision(bits);
  const MpReal z = c.b * t;
  const MpReal r = c.beta / t;
  const MpReal E = exp(-z);
  const int off = offset(q);
  const ClosedForm closed = long_closed_form(c, q, t, z, E);

  MpReal pref = c.alpha * c.b_pow_a * c.inv_gamma_a * exp((c.a + static_cast<long>(off - 1)) * log(t)) * E;
  if (q == Quantity::density || q == Quantity::supercdf) pref = -pref;

  const MpReal one_minus_a = 1L - c.a;
  KummerPolynomial poly(z, one_minus_a);
  KummerPolynomial poly2(z, one_minus_a + 1L);
  const long kmin = q == Quantity::supercdf ? 2 : 1;
  const double threshold =
      -target + (closed.value.is_zero() ? 0.0 : std::min(0.0, closed.value.log10_abs()));

  SeriesRun run;
  MpReal sum(0L, bits);
  MpReal rk = pow(r, kmin);
  for (long k = kmin; k < kMaxTerms; ++k) {
    MpReal term(0L, bits);
    const MpReal k_alpha = c.neg_alpha + k;
    switch (q) {
      case Quantity::density: term = poly.coefficient(k) / k_alpha; break;
      case Quantity::cdf: term = poly.coefficient(k - 1) / (k_alpha * k); break;
      case Quantity::supercdf: term = poly.coefficient(k - 2) / (k_alpha * (k * (k - 1))); break;
      case Quantity::derivative:
        term = (z * poly.coefficient(k) + one_minus_a * poly2.coefficient(k)) / k_alpha;
        break;
    }
    term *= pref * rk;
    sum += term;
    if (record) record->push_back(term);
    const double lt = term.is_zero() ? -HUGE_VAL : term.log10_abs();
    if (lt > run.max_log10) {
      run.max_log10 = lt;
      run.max_term = term.with_precision(64);
    }
    if (static_cast<double>(k + 1) > c.b_beta && lt < threshold) {
      run.terms = k - kmin + 1;
      run.value = closed.value + sum;
      const double parts = std::max(closed.max_part_log10, run.max_log10);
      run.loss = std::max({poly.loss(), poly2.loss(), cancellation(parts, run.value)});
      return run;
    }
    rk *= r;
  }
  throw ConvergenceError("long-t series did not converge");
}

EvalResult zero_result(const PrecisionContext& ctx, Clock::time_point start) {
  EvalResult out{MpReal(0L, ctx.working_bits()), {}};
  out.diagnostics.branch = Branch::zero;
  out.diagnostics.working_precision = ctx.target_digits;
  out.diagnostics.wall_time_s = seconds_since(start);
  return out;
}

long decimal_exponent(double log10_value) {
  return std::isfinite(log10_value) ? static_cast<long>(std::floor(log10_value)) : 0;
}

int required_precision(int target, double log10_value) {
  const long x = std::isfinite(log10_value) ? std::lround(log10_value) : 0;
  return target + static_cast<int>(std::labs(x));
}

PrecisionContext scan_context() {
  PrecisionContext ctx;
  ctx.target_digits = 25;
  ctx.working_digits = 30;
  ctx.guard_digits = 5;
  return ctx;
}

}  // namespace

// ---------------------------------------------------------------------------

void GpcParams::validate() const {
  for (const MpReal* v : {&a, &b, &alpha, &beta})
    if (!v->is_finite() || !(*v > 0.0)) throw DomainError("GPC parameters must be positive and finite");
  const MpReal frac = abs(alpha - round(alpha));
  if (frac < 1e-12) throw DomainError("alpha must not be an integer");
}

GpcParams GpcParams::parse(std::string_view a, std::string_view b, std::string_view alpha,
                           std::string_view beta_h, mpfr_prec_t bits) {
  GpcParams p{MpReal::parse(a, bits), MpReal::parse(b, bits), MpReal::parse(alpha, bits),
              MpReal::parse(beta_h, bits)};
  p.validate();
  return p;
}

GpcParams GpcParams::dog1() {
  const mpfr_prec_t bits = kStorageBits;
  GpcParams p{
      MpReal::parse("0.34931003807815571524792421542558602868248355919027496611955665616", bits),
      MpReal::parse("0.73182479199387479660419087183394451163091958778927254273673996698", bits),
      MpReal::parse("0.26437129139517680335740710070693267536710608361890151476103695922", bits),
      MpReal(25L, bits) / 3600L};
  p.validate();
  return p;
}

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::zero: return "zero";
    case Branch::short_t: return "short_t";
    case Branch::long_t: return "long_t";
  }
  return "unknown";
}

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::density: return "density";
    case Quantity::cdf: return "cdf";
    case Quantity::supercdf: return "supercdf";
    case Quantity::derivative: return "derivative";
  }
  return "unknown";
}

GpcModel::GpcModel(GpcParams params, PrecisionContext ctx) : params_(std::move(params)), ctx_(ctx) {
  params_.validate();
  ctx_.validate();
  consts_ = make_constants(params_, ctx_);
}

EvalResult GpcModel::eval(Quantity q, const MpReal& t) const {
  const auto start = Clock::now();
  if (!t.is_finite()) throw DomainError("time must be finite");
  if (!(t > consts_->beta)) return zero_result(ctx_, start);
  const bool use_short = t < consts_->four_beta;
  auto run = [&](const Constants& c) {
    return use_short ? run_short(c, q, t, ctx_.target_digits, nullptr)
                     : run_long(c, q, t, ctx_.target_digits, nullptr);
  };
  SeriesRun r = run(*consts_);
  for (int attempt = 0; attempt < 2 && r.loss > ctx_.guard_digits - 1; ++attempt) {
    const int extra = static_cast<int>(std::ceil(std::min(r.loss, 4.0 * ctx_.target_digits))) +
                      ctx_.guard_digits;
    auto wide = make_constants(params_, ctx_.widened(extra));
    r = run(*wide);
  }
  EvalResult out{r.value.with_precision(ctx_.working_bits()), {}};
  out.diagnostics.branch = use_short ? Branch::short_t : Branch::long_t;
  out.diagnostics.terms_summed = r.terms;
  out.diagnostics.max_term_log10 = decimal_exponent(r.max_log10);
  out.diagnostics.max_term = r.max_term;
  out.diagnostics.working_precision =
      use_short ? required_precision(ctx_.target_digits, r.max_log10)
                : required_precision(ctx_.target_digits, r.value.is_zero() ? 0.0 : r.value.log10_abs());
  out.diagnostics.wall_time_s = seconds_since(start);
  return out;
}

EvalDiagnostics GpcModel::short_t_scan(Quantity q, const MpReal& t) const {
  const auto start = Clock::now();
  EvalDiagnostics d;
  if (!(t > consts_->beta)) return zero_result(ctx_, start).diagnostics;
  auto scan = make_constants(params_, scan_context());
  SeriesRun r = run_short(*scan, q, t, ctx_.target_digits, nullptr);
  d.branch = Branch::short_t;
  d.terms_summed = r.terms;
  d.max_term_log10 = decimal_exponent(r.max_log10);
  d.max_term = r.max_term;
  d.working_precision = required_precision(ctx_.target_digits, r.max_log10);
  d.wall_time_s = seconds_since(start);
  return d;
}

EvalResult GpcModel::short_t(Quantity q, const MpReal& t) const {
  const auto start = Clock::now();
  if (!(t > consts_->beta)) return zero_result(ctx_, start);
  const EvalDiagnostics scan = short_t_scan(q, t);
  PrecisionContext wide = ctx_;
  wide.working_digits = scan.working_precision + ctx_.guard_digits;
  auto c = make_constants(params_, wide);
  SeriesRun r = run_short(*c, q, t, ctx_.target_digits, nullptr);
  EvalResult out{r.value.with_precision(ctx_.working_bits()), scan};
  out.diagnostics.terms_summed = r.terms;
  out.diagnostics.wall_time_s = seconds_since(start);
  return out;
}

EvalResult GpcModel::long_t(Quantity q, const MpReal& t) const {
  const auto start = Clock::now();
  if (!(t > consts_->beta)) return zero_result(ctx_, start);
  SeriesRun r = run_long(*consts_, q, t, ctx_.target_digits, nullptr);
  if (r.loss > ctx_.guard_digits - 1) {
    auto wide = make_constants(params_, ctx_.widened(static_cast<int>(std::ceil(r.loss)) + ctx_.guard_digits));
    r = run_long(*wide, q, t, ctx_.target_digits, nullptr);
  }
  EvalResult out{r.value.with_precision(ctx_.working_bits()), {}};
  out.diagnostics.branch = Branch::long_t;
  out.diagnostics.terms_summed = r.terms;
  out.diagnostics.max_term_log10 = decimal_exponent(r.max_log10);
  out.diagnostics.max_term = r.max_term;
  out.diagnostics.working_precision =
      required_precision(ctx_.target_digits, r.value.is_zero() ? 0.0 : r.value.log10_abs());
  out.diagnostics.wall_time_s = seconds_since(start);
  return out;
}

MpReal GpcModel::asymptote(const MpReal& t) const {
  if (!(t > 0.0)) throw DomainError("asymptote requires t > 0");
  const Constants& c = *consts_;
  const MpReal tt = t.with_precision(c.bits);
  const MpReal am = c.a - c.alpha;
  return c.csc_scale * exp((am - 1L) * log(tt)) * hyp1f1_reg(c.a, am, -(c.b * tt), c.ctx);
}

std::vector<MpReal> GpcModel::short_t_terms(Quantity q, const MpReal& t) const {
  std::vector<MpReal> terms;
  if (t > consts_->beta) run_short(*consts_, q, t, ctx_.target_digits, &terms);
  return terms;
}

std::vector<MpReal> GpcModel::long_t_terms(Quantity q, const MpReal& t) const {
  std::vector<MpReal> terms;
  if (t > consts_->beta) run_long(*consts_, q, t, ctx_.target_digits, &terms);
  return terms;
}

MpReal GpcModel::density(double t_h) const { return eval(Quantity::density, MpReal(t_h, consts_->bits)).value; }

// ---------------------------------------------------------------------------

EvalResult gpc_short(const GpcParams& p, const MpReal& t, const PrecisionContext& ctx) {
  return GpcModel(p, ctx).short_t(Quantity::density, t);
}

EvalResult gpc_long(const GpcParams& p, const MpReal& t, const PrecisionContext& ctx) {
  return GpcModel(p, ctx).long_t(Quantity::density, t);
}

EvalResult gpc_eval(const GpcParams& p, const MpReal& t, const PrecisionContext& ctx) {
  return GpcModel(p, ctx).eval(Quantity::density, t);
}

EvalResult gpc_cdf(const GpcParams& p, const MpReal& t, const PrecisionContext& ctx) {
  return GpcModel(p, ctx).eval(Quantity::cdf, t);
}

EvalResult gpc_supercdf(const GpcParams& p, const MpReal& t, const PrecisionContext& ctx) {
  return GpcModel(p, ctx).eval(Quantity::supercdf, t);
}

EvalResult gpc_deriv(const GpcParams& p, const MpReal& t, const PrecisionContext& ctx) {
  return GpcModel(p, ctx).eval(Quantity::derivative, t);
}

MpReal gpc_asymptote(const GpcParams& p, const MpReal& t, const PrecisionContext& ctx) {
  return GpcModel(p, ctx).asymptote(t);
}

MpReal half_life(const GpcParams& p, const MpReal& t, const PrecisionContext& ctx) {
  const GpcModel model(p, ctx);
  const MpReal f = model.eval(Quantity::density, t).value;
  const MpReal d = model.eval(Quantity::derivative, t).value;
  if (f.is_zero() || d.is_zero() || abs(t * d / f) < 1e-9)
    throw SingularPointError("half-life is undefined where the density derivative vanishes");
  return -MpReal::ln2(ctx.working_bits()) * f / d;
}

MpReal peak_time(const GpcParams& p, const PrecisionContext& ctx) {
  const GpcModel model(p, ctx);
  const mpfr_prec_t bits = ctx.working_bits();
  const MpReal beta = p.beta.with_precision(bits);
  const MpReal t_max(1000L, bits);
  if (!(t_max > beta)) throw NotFoundError("beta exceeds the peak search range");
  auto slope_sign = [&](const MpReal& t) { return model.eval(Quantity::derivative, t).value.sign(); };

  // Geometric grid in t - beta, eight points per decade.
  const MpReal step = exp(log(MpReal(10L, bits)) / 8L);
  MpReal offset_h = beta * 1e-9;
  MpReal prev_t = beta + offset_h;
  int prev_sign = slope_sign(prev_t);
  std::vector<std::pair<MpReal, MpReal>> brackets;
  while (prev_t < t_max) {
    offset_h *= step;
    MpReal t = min(beta + offset_h, t_max);
    const int s = slope_sign(t);
    if (s != 0 && prev_sign != 0 && s != prev_sign) brackets.emplace_back(prev_t, t);
    if (s == 0) brackets.emplace_back(t, t);
    if (s != 0) prev_sign = s;
    prev_t = t;
  }
  if (brackets.empty()) throw NotFoundError("density derivative has no sign change in (beta, 1000 h]");
  if (brackets.size() > 1) throw NotFoundError("density derivative changes sign more than once");
  MpReal lo = brackets.front().first;
  MpReal hi = brackets.front().second;
  const int lo_sign = slope_sign(lo);
  while (hi - lo > 1e-12) {
    MpReal mid = (lo + hi) / 2L;
    const int s = slope_sign(mid);
    if (s == 0) return mid;
    if (s == lo_sign) lo = mid; else hi = mid;
  }
  return (lo + hi) / 2L;
}

MpReal conv_oracle(const GpcParams& p, const MpReal& t_in, const PrecisionContext& ctx) {
  p.validate();
  const mpfr_prec_t bits = ctx.working_bits();
  const MpReal t = t_in.with_precision(bits);
  const MpReal beta = p.beta.with_precision(bits);
  if (!(t > beta)) return MpReal(0L, bits);
  const MpReal a = p.a.with_precision(bits);
  const MpReal b = p.b.with_precision(bits);
  const MpReal alpha = p.alpha.with_precision(bits);
  const MpReal gd_scale = exp(a * log(b) - ln_gamma(a, ctx));
  const MpReal pd_scale = alpha * exp(alpha * log(beta));
  const MpReal a1 = a - 1L;
  const MpReal na1 = -alpha - 1L;

  // s runs over (0, t - beta]; the gamma factor is singular at s = 0.
  Integrand f = [&](const MpReal& s, const MpReal&, const MpReal&) {
    return gd_scale * exp(a1 * log(s) - b * s) * pd_scale * exp(na1 * log(t - s));
  };
  const MpReal len = t - beta;
  std::vector<MpReal> points{MpReal(0L, bits), len};
  for (MpReal u = beta * 4L; u < t; u *= 4L) points.push_back(t - u);
  const MpReal scale = 1L / b;
  for (long j = -3; j <= 6; ++j) {
    const MpReal s = scale * std::pow(4.0, static_cast<double>(j));
    if (s < len) points.push_back(s);
  }
  std::sort(points.begin(), points.end(), [](const MpReal& x, const MpReal& y) { return x < y; });
  std::vector<MpReal> pts;
  for (const MpReal& x : points)
    if (pts.empty() || (x - pts.back()) > len * 1e-6) pts.push_back(x);
  if ((pts.back() - len).sign() != 0) pts.back() = len;
  return tanh_sinh_pieces(f, pts, ctx.target_digits, bits).value;
}

}  // namespace gpc
