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


#include "gpc/io.hpp"

#include <fstream>
#include <sstream>

namespace gpc {

namespace {

std::string trim(std::string s) {
  const auto ws = " \t\r\n";
  s.erase(0, s.find_first_not_of(ws));
  s.erase(s.find_last_not_of(ws) + 1);
  return s;
}

double parse_field(const std::string& text, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw DataError("line " + std::to_string(line) + ": bad number '" + text + "'");
}

}  // namespace

ConcSeries read_conc_csv(std::istream& in, const std::string& subject_id, double dose_mg_kg) {
  ConcSeries out;
  out.subject_id = subject_id;
  out.dose_mg_kg = dose_mg_kg;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    if (!header) {
      if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
      if (line != "time_h,conc_mg_per_L") throw DataError("expected header 'time_h,conc_mg_per_L'");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      throw DataError("line " + std::to_string(lineno) + ": expected two fields");
    out.samples.push_back(
        {parse_field(trim(line.substr(0, comma)), lineno), parse_field(trim(line.substr(comma + 1)), lineno)});
  }
  if (!header) throw DataError("empty CSV input");
  out.validate();
  return out;
}

ConcSeries read_conc_csv_file(const std::string& path, double dose_mg_kg) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return read_conc_csv(in, path, dose_mg_kg);
}

nlohmann::json to_json(const EvalResult& r) {
  const EvalDiagnostics& d = r.diagnostics;
  return {{"value", r.value.to_string()},
          {"branch", std::string(to_string(d.branch))},
          {"terms_summed", d.terms_summed},
          {"max_term_log10", d.max_term_log10},
          {"max_term", d.max_term.to_string(6)},
          {"working_precision", d.working_precision},
          {"wall_time_s", d.wall_time_s}};
}

nlohmann::json to_json(const FitResult& fit) {
  return {{"a", fit.params.a.to_string()},
          {"b", fit.params.b.to_string()},
          {"alpha", fit.params.alpha.to_string()},
          {"beta_h", fit.params.beta.to_string()},
          {"auc", fit.auc.to_string()},
          {"cl_ml_min_kg", std::to_string(fit.clearance)},
          {"rrms", std::to_string(fit.rrms)},
          {"r2", std::to_string(fit.r_squared)},
          {"iterations", fit.iterations},
          {"converged", fit.converged},
          {"precision_bits", static_cast<long>(fit.params.a.precision())}};
}

nlohmann::json to_json(const Error& e) {
  return {{"error", {{"kind", e.kind()}, {"message", e.what()}}}};
}

FitResult fit_from_json(const nlohmann::json& j) {
  try {
    const auto bits = static_cast<mpfr_prec_t>(j.value("precision_bits", static_cast<long>(GpcParams::kStorageBits)));
    auto get = [&](const char* key) { return j.at(key).get<std::string>(); };
    FitResult fit{GpcParams::parse(get("a"), get("b"), get("alpha"), get("beta_h"), bits),
                  MpReal::parse(get("auc"), bits)};
    fit.clearance = std::stod(get("cl_ml_min_kg"));
    fit.rrms = std::stod(get("rrms"));
    fit.r_squared = std::stod(get("r2"));
    fit.iterations = j.value("iterations", 0);
    fit.converged = j.value("converged", false);
    return fit;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed fit document: ") + e.what());
  } catch (const std::logic_error&) {
    throw DataError("malformed fit document");
  }
}

}  // namespace gpc
