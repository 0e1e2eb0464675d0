// Copyright 2026 The stellarqfi Authors
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


// CSV and JSON encodings of sweep and crossover results.

#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "sqfi/sweep/sweep.hpp"

namespace sqfi {

inline constexpr std::string_view kCsvHeader =
    "axis,axis_value,strategy,r,eta,epsilon,gamma,J_phi_per_photon,J_gamma_per_photon";
inline constexpr std::string_view kCrossoverCsvHeader = "first,second,quantity,epsilon,gamma,r,eta_cross";

/// Scientific notation with 17 significant digits; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double x);

/// "inf" for infinite squeezing, the number otherwise.
std::string format_squeezing(const Squeezing& s);

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool header = true);
std::string to_csv(const std::vector<SweepRow>& rows);

/// {"columns": [...], "rows": [{...}, ...]}. Missing values are null; r is "inf" for infinite squeezing.
void write_json(std::ostream& out, const std::vector<SweepRow>& rows);
std::string to_json(const std::vector<SweepRow>& rows);

struct CrossoverResult {
  CrossoverQuery query;
  double eta_cross;
};

void write_crossover_csv(std::ostream& out, const std::vector<CrossoverResult>& results);

}  // namespace sqfi
