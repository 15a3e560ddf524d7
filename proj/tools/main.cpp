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


// gpc: command-line front end for the gamma-Pareto convolution library.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gpc/dosing.hpp"
#include "gpc/errors.hpp"
#include "gpc/gpc.hpp"
#include "gpc/io.hpp"
#include "gpc/pk_model.hpp"
#include "gpc/resample.hpp"

using nlohmann::json;

namespace {

constexpr const char* kDog1Auc = "31.16";
constexpr double kDog1Dose = 18.248;

struct ParamFlags {
  bool dog1 = false;
  std::string a, b, alpha, beta_h, beta_s;
  int digits = 65;

  void attach(CLI::App* cmd) {
    auto* d1 = cmd->add_flag("--dog1", dog1, "Use the dog-1 parameter set");
    auto* oa = cmd->add_option("--a", a, "Gamma shape (decimal string)");
    auto* ob = cmd->add_option("--b", b, "Gamma rate, 1/h (decimal string)");
    auto* oal = cmd->add_option("--alpha", alpha, "Pareto shape (decimal string)");
    auto* bh = cmd->add_option("--beta-h", beta_h, "Pareto location in hours");
    auto* bs = cmd->add_option("--beta-s", beta_s, "Pareto location in seconds");
    bh->excludes(bs);
    for (CLI::Option* o : {oa, ob, oal, bh, bs}) d1->excludes(o);
    cmd->add_option("--digits", digits, "Target significant digits")->check(CLI::Range(5, 100000));
  }

  gpc::GpcParams params() const {
    if (dog1) return gpc::GpcParams::dog1();
    if (a.empty() || b.empty() || alpha.empty() || (beta_h.empty() && beta_s.empty()))
      throw CLI::ValidationError("parameters", "give --dog1 or all of --a --b --alpha and --beta-h/--beta-s");
    if (!beta_h.empty()) return gpc::GpcParams::parse(a, b, alpha, beta_h);
    gpc::GpcParams p = gpc::GpcParams::parse(a, b, alpha, "1");
    p.beta = gpc::MpReal::parse(beta_s, gpc::GpcParams::kStorageBits) / 3600L;
    p.validate();
    return p;
  }

  gpc::PrecisionContext context() const { return gpc::PrecisionContext::for_target(digits); }
};

gpc::MpReal parse_time(const std::string& text, mpfr_prec_t bits) {
  gpc::MpReal t = gpc::MpReal::parse(text, bits);
  if (!t.is_finite() || t < 0.0) throw gpc::DomainError("time must be a finite non-negative number of hours");
  return t;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

json interval_json(const gpc::IntervalEstimate& ci) {
  return {{"lower", ci.lower},
          {"upper", ci.upper},
          {"level", ci.level},
          {"method", ci.method == gpc::IntervalMethod::student_n ? "student_n" : "weibull_quantile"}};
}

json column_summary(const std::vector<double>& x) {
  json j;
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  j["mean"] = mean;
  try {
    const gpc::CvEstimate cv = gpc::cv_sd_corrected(x);
    j["sd_unbiased"] = cv.sd_unbiased;
    j["cv"] = cv.cv;
  } catch (const gpc::Error& e) {
    j["cv_error"] = e.what();
  }
  j["ci_student_n"] = interval_json(gpc::ci_student_n(x));
  try {
    j["ci_weibull_quantile"] = interval_json(gpc::ci_weibull_quantile(x));
  } catch (const gpc::Error& e) {
    j["ci_weibull_quantile_error"] = e.what();
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gamma-Pareto convolution evaluator, fitter and dosing simulator"};
  app.require_subcommand(1);

  ParamFlags pf;
  std::string t_text;
  std::string algorithm = "auto";
  std::string data_path, fit_path, out_path, times_text = "0.00833,0.1,1,12,72,1000,4396";
  std::string auc_text;
  double dose = kDog1Dose, interval = 24.0, reference_dose = 0.0;
  int count = 14, replicates = 40, restarts = 8, workers = 1;
  std::uint64_t seed = 1;

  struct EvalCmd {
    const char* name;
    gpc::Quantity q;
    const char* help;
  };
  const EvalCmd eval_cmds[] = {{"eval", gpc::Quantity::density, "Evaluate the density"},
                               {"cdf", gpc::Quantity::cdf, "Evaluate the CDF"},
                               {"supercdf", gpc::Quantity::supercdf, "Evaluate the time integral of the CDF"},
                               {"deriv", gpc::Quantity::derivative, "Evaluate the density derivative"}};
  std::vector<std::pair<CLI::App*, gpc::Quantity>> evals;
  for (const EvalCmd& c : eval_cmds) {
    CLI::App* cmd = app.add_subcommand(c.name, c.help);
    pf.attach(cmd);
    cmd->add_option("--t", t_text, "Time in hours")->required();
    cmd->add_option("--algorithm", algorithm, "auto, short or long")
        ->check(CLI::IsMember({"auto", "short", "long"}));
    evals.emplace_back(cmd, c.q);
  }

  CLI::App* fit_cmd = app.add_subcommand("fit", "Fit a concentration series");
  pf.attach(fit_cmd);
  fit_cmd->add_option("--data", data_path, "CSV with header time_h,conc_mg_per_L")->required();
  fit_cmd->add_option("--dose-mg-kg", dose, "Administered dose");
  fit_cmd->add_option("--seed", seed, "Random seed for the restarts");
  fit_cmd->add_option("--restarts", restarts, "Latin-hypercube starts")->check(CLI::PositiveNumber);
  fit_cmd->add_option("--out", out_path, "Also write the fit document here");

  CLI::App* boot_cmd = app.add_subcommand("bootstrap", "Model-based bootstrap of a fit");
  pf.attach(boot_cmd);
  boot_cmd->add_option("--data", data_path, "CSV with header time_h,conc_mg_per_L")->required();
  boot_cmd->add_option("--fit", fit_path, "Fit document from 'fit --out'; refit when absent");
  boot_cmd->add_option("--dose-mg-kg", dose, "Administered dose");
  boot_cmd->add_option("--replicates", replicates, "Replicate count")->check(CLI::Range(2, 100000));
  boot_cmd->add_option("--seed", seed, "Random seed");
  boot_cmd->add_option("--restarts", restarts, "Latin-hypercube starts per refit")->check(CLI::PositiveNumber);
  boot_cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  CLI::App* md_cmd = app.add_subcommand("multidose", "Repeated bolus dosing summary");
  pf.attach(md_cmd);
  md_cmd->add_option("--auc", auc_text, "AUC of one reference dose, mg h/L (dog 1: 31.16)");
  md_cmd->add_option("--dose-mg-kg", dose, "Dose per administration");
  md_cmd->add_option("--reference-dose-mg-kg", reference_dose, "Dose the AUC belongs to (default: --dose-mg-kg)");
  md_cmd->add_option("--interval-h", interval, "Dosing interval");
  md_cmd->add_option("--count", count, "Number of doses")->check(CLI::PositiveNumber);

  CLI::App* bench_cmd = app.add_subcommand("bench", "Per-time algorithm diagnostics as CSV");
  pf.attach(bench_cmd);
  bench_cmd->add_option("--times", times_text, "Comma-separated times in hours");

  CLI::App* self_cmd = app.add_subcommand("selftest", "Quick internal consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (auto& [cmd, q] : evals) {
      if (!cmd->parsed()) continue;
      const gpc::GpcModel model(pf.params(), pf.context());
      const gpc::MpReal t = parse_time(t_text, model.context().working_bits());
      const gpc::EvalResult r = algorithm == "short" ? model.short_t(q, t)
                                : algorithm == "long" ? model.long_t(q, t)
                                                      : model.eval(q, t);
      json doc = gpc::to_json(r);
      doc["value"] = r.value.to_string(pf.digits);
      doc["quantity"] = std::string(gpc::to_string(q));
      std::cout << doc.dump(2) << "\n";
      return 0;
    }

    if (fit_cmd->parsed()) {
      const gpc::ConcSeries data = gpc::read_conc_csv_file(data_path, dose);
      gpc::FitConfig cfg = gpc::FitConfig::for_data(data);
      cfg.seed = seed;
      cfg.restarts = restarts;
      const gpc::FitResult fit = gpc::fit_nelder_mead(data, cfg, pf.context());
      const json doc = gpc::to_json(fit);
      if (!out_path.empty()) std::ofstream(out_path) << doc.dump(2) << "\n";
      std::cout << doc.dump(2) << "\n";
      return 0;
    }

    if (boot_cmd->parsed()) {
      const gpc::ConcSeries data = gpc::read_conc_csv_file(data_path, dose);
      gpc::FitConfig cfg = gpc::FitConfig::for_data(data);
      cfg.restarts = restarts;
      cfg.seed = seed;
      gpc::FitResult fit;
      if (!fit_path.empty()) {
        std::ifstream in(fit_path);
        if (!in) throw gpc::DataError("cannot open '" + fit_path + "'");
        fit = gpc::fit_from_json(json::parse(in));
      } else {
        fit = gpc::fit_nelder_mead(data, cfg, pf.context());
      }
      const gpc::ResidualReport checks = gpc::residual_checks(fit, data, pf.context());
      const gpc::BootstrapRun run = gpc::bootstrap_run(fit, data, replicates, cfg, seed, pf.context(), workers);
      json rows = json::array();
      std::vector<std::vector<double>> cols(6);
      for (const gpc::ReplicateRow& r : run.replicates) {
        rows.push_back({{"a", r.a}, {"b", r.b}, {"alpha", r.alpha}, {"beta_h", r.beta_h}, {"auc", r.auc},
                        {"cl_ml_min_kg", r.clearance}, {"rrms", r.rrms}, {"r2", r.r_squared},
                        {"wall_time_s", r.wall_time_s}});
        const double v[] = {r.a, r.b, r.alpha, r.beta_h, r.auc, r.clearance};
        for (std::size_t i = 0; i < 6; ++i) cols[i].push_back(v[i]);
      }
      json summary;
      const char* names[] = {"a", "b", "alpha", "beta_h", "auc", "cl_ml_min_kg"};
      if (run.replicates.size() >= 2)
        for (std::size_t i = 0; i < 6; ++i) summary[names[i]] = column_summary(cols[i]);
      json doc = {{"fit", gpc::to_json(fit)},
                  {"residual_checks",
                   {{"degenerate", checks.degenerate}, {"anderson_darling", checks.anderson_darling},
                    {"normality_p", checks.normality_p}, {"normal", checks.normal}, {"slope", checks.slope},
                    {"slope_p", checks.slope_p}, {"homoscedastic", checks.homoscedastic}}},
                  {"requested", run.requested},
                  {"failed", run.failed},
                  {"seed", run.seed},
                  {"replicates", rows},
                  {"summary", summary}};
      std::cout << doc.dump(2) << "\n";
      return 0;
    }

    if (md_cmd->parsed()) {
      gpc::GpcParams p = pf.params();
      if (auc_text.empty()) {
        if (!pf.dog1) throw CLI::ValidationError("--auc", "required unless --dog1 is given");
        auc_text = kDog1Auc;
      }
      const gpc::DoseResponse model{p, gpc::MpReal::parse(auc_text, gpc::GpcParams::kStorageBits),
                                    reference_dose > 0.0 ? reference_dose : dose};
      const gpc::DoseRegimen regimen{dose, interval, count};
      const gpc::MultidoseReport rep = gpc::interval_summary(model, regimen, pf.context());
      json rows = json::array();
      for (const gpc::IntervalSummary& s : rep.intervals)
        rows.push_back({{"index", s.index}, {"peak_time_h", s.peak_time_h}, {"peak_conc", s.peak_conc},
                        {"trough_conc", s.trough_conc}, {"peak_doses_retained", s.peak_doses_retained},
                        {"trough_doses_retained", s.trough_doses_retained},
                        {"mean_doses_retained", s.mean_doses_retained}});
      std::cout << json{{"intervals", rows}, {"doses_eliminated", rep.doses_eliminated}}.dump(2) << "\n";
      return 0;
    }

    if (bench_cmd->parsed()) {
      const gpc::GpcModel model(pf.params(), pf.context());
      std::cout << "t_h,algorithm,terms,max_term_log10,precision_digits,runtime_s\n";
      for (const std::string& ts : split_list(times_text)) {
        const gpc::MpReal t = parse_time(ts, model.context().working_bits());
        const gpc::EvalResult rs = model.short_t(gpc::Quantity::density, t);
        const gpc::EvalResult rl = model.long_t(gpc::Quantity::density, t);
        for (const auto& [name, r] : {std::pair{"short_t", &rs}, std::pair{"long_t", &rl}}) {
          const gpc::EvalDiagnostics& d = r->diagnostics;
          std::cout << ts << ',' << name << ',' << d.terms_summed << ',' << d.max_term_log10 << ','
                    << d.working_precision << ',' << d.wall_time_s << "\n";
        }
      }
      return 0;
    }

    if (self_cmd->parsed()) {
      const gpc::GpcModel model(gpc::GpcParams::dog1());
      json checks = json::array();
      bool ok = true;
      for (const char* ts : {"0.0277777777777777777777777777777777777777777777777777777777777777778", "0.1", "1",
                             "12", "72"}) {
        const gpc::MpReal t = gpc::MpReal::parse(ts, model.context().working_bits());
        const double rel = gpc::relative_difference(model.short_t(gpc::Quantity::density, t).value,
                                                    model.long_t(gpc::Quantity::density, t).value);
        const bool pass = rel <= 1e-60;
        ok = ok && pass;
        checks.push_back({{"t_h", ts}, {"short_long_rel_diff", rel}, {"pass", pass}});
      }
      std::cout << json{{"pass", ok}, {"checks", checks}}.dump(2) << "\n";
      return ok ? 0 : 1;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const gpc::Error& e) {
    std::cout << gpc::to_json(e).dump(2) << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cout << gpc::to_json(gpc::DataError(e.what())).dump(2) << "\n";
    return 1;
  }
  return 2;
}
