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


#include <sstream>

#include "doctest.h"

#include "gpc/io.hpp"

using namespace gpc;

TEST_SUITE("io") {
  TEST_CASE("CSV ingestion") {
    std::istringstream in("time_h,conc_mg_per_L\r\n0.333,110.5\n1, 20.25\n\n72,0.04\n");
    const ConcSeries s = read_conc_csv(in, "dog1", 18.248);
    REQUIRE(s.samples.size() == 3);
    CHECK(s.samples[1].time_h == 1.0);
    CHECK(s.samples[1].conc_mg_per_L == 20.25);
    CHECK(s.dose_mg_kg == 18.248);
    CHECK(s.subject_id == "dog1");
  }

  TEST_CASE("CSV errors") {
    std::istringstream bad_header("t,c\n1,2\n");
    CHECK_THROWS_AS(read_conc_csv(bad_header), DataError);
    std::istringstream bad_number("time_h,conc_mg_per_L\n1,abc\n");
    CHECK_THROWS_AS(read_conc_csv(bad_number), DataError);
    std::istringstream extra("time_h,conc_mg_per_L\n1,2,3\n");
    CHECK_THROWS_AS(read_conc_csv(extra), DataError);
    std::istringstream unordered("time_h,conc_mg_per_L\n2,1\n1,2\n");
    CHECK_THROWS_AS(read_conc_csv(unordered), DataError);
    std::istringstream empty("");
    CHECK_THROWS_AS(read_conc_csv(empty), DataError);
    CHECK_THROWS_AS(read_conc_csv_file("/nonexistent/file.csv"), DataError);
  }

  TEST_CASE("fit document round trip reproduces evaluations bit for bit") {
    const PrecisionContext ctx;
    const mpfr_prec_t bits = ctx.working_bits();
    FitResult fit{GpcParams{MpReal(0.3493100380781557, bits), MpReal(0.7318247919938748, bits),
                            MpReal(0.2643712913951768, bits), MpReal(25.3 / 3600.0, bits)},
                  MpReal(31.160000001, bits)};
    fit.clearance = 9.76;
    fit.rrms = 0.087;
    fit.r_squared = 0.99872;
    fit.iterations = 1234;
    fit.converged = true;
    const FitResult back = fit_from_json(nlohmann::json::parse(to_json(fit).dump()));
    CHECK(back.params.a == fit.params.a);
    CHECK(back.params.beta == fit.params.beta);
    CHECK(back.auc == fit.auc);
    CHECK(back.iterations == 1234);
    CHECK(back.converged);
    for (double t : {0.01, 1.0, 72.0}) {
      const MpReal x(t, bits);
      CHECK(concentration(back, x, ctx) == concentration(fit, x, ctx));
    }
  }

  TEST_CASE("malformed fit document") {
    CHECK_THROWS_AS(fit_from_json(nlohmann::json{{"a", "0.3"}}), DataError);
    CHECK_THROWS_AS(fit_from_json(nlohmann::json{{"a", 3}}), DataError);
  }

  TEST_CASE("evaluation and error documents") {
    const EvalResult r = gpc_eval(GpcParams::dog1(), MpReal(12L, 300));
    const nlohmann::json j = to_json(r);
    for (const char* key : {"value", "branch", "terms_summed", "max_term_log10", "working_precision", "wall_time_s"})
      CHECK(j.contains(key));
    CHECK(j["branch"] == "long_t");
    CHECK(MpReal::parse(j["value"].get<std::string>(), r.value.precision()) == r.value);
    const nlohmann::json e = to_json(SingularPointError("at the peak"));
    CHECK(e["error"]["kind"] == "singular_point");
  }
}
