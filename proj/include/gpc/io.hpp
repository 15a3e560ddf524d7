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

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "gpc/errors.hpp"
#include "gpc/gpc.hpp"
#include "gpc/pk_model.hpp"

namespace gpc {

/// Reads `time_h,conc_mg_per_L` CSV. Throws DataError on malformed rows.
ConcSeries read_conc_csv(std::istream& in, const std::string& subject_id = "", double dose_mg_kg = 0.0);
ConcSeries read_conc_csv_file(const std::string& path, double dose_mg_kg = 0.0);

nlohmann::json to_json(const EvalResult& r);
nlohmann::json to_json(const FitResult& fit);
nlohmann::json to_json(const Error& e);

/// Inverse of to_json(FitResult); values parse back at the stored precision.
FitResult fit_from_json(const nlohmann::json& j);

}  // namespace gpc
