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


// Self-verification: invariant suites and oracle comparisons run in sequence.

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace sqfi {

struct CheckResult {
  std::string name;
  bool passed;
  double measured;
  double tolerance;
  /// How measured relates to tolerance when passing: "<=", ">=" or ">".
  std::string relation;
  std::string detail;
};

/// One grid point of the closed form / quadrature / fidelity comparison.
struct ThreeWayRow {
  double gamma;
  double epsilon;
  double eta;
  double r;
  double closed_phi;
  double quadrature_phi;
  double fidelity_phi;
  double closed_gamma;
  double quadrature_gamma;
  double fidelity_gamma;
  /// Largest pairwise relative deviation over both parameters.
  double max_relative;
};

struct VerifyOptions {
  std::uint64_t seed = 20260214;
  int mc_samples = 100000;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::vector<ThreeWayRow> three_way;
  bool all_passed() const;
};

/// Fidelity-route per-outcome averages use an order-8 Gauss-Hermite rule.
std::vector<ThreeWayRow> three_way_table(const std::vector<double>& gammas, const std::vector<double>& etas,
                                         const std::vector<double>& rs, const std::vector<double>& epsilons);

/// Largest relative gap between the closed form (with its Y denominator
/// scaled by y_scale) and the quadrature ensemble over the shared grid.
double closed_vs_quadrature_deviation(long double y_scale);

VerifyReport run_verify(const VerifyOptions& options = {});
void print_report(std::ostream& out, const VerifyReport& report);

}  // namespace sqfi
