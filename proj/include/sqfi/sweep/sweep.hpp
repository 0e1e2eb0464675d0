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


// Parameter sweeps and crossover search over the strategy evaluators.

#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqfi/stellar/params.hpp"
#include "sqfi/stellar/strategies.hpp"

namespace sqfi {

enum class Axis { kEta, kR, kGamma, kEpsilon };
enum class Spacing { kLinear, kLog };

std::string_view axis_name(Axis a);
Axis parse_axis(std::string_view name);
std::string_view spacing_name(Spacing s);
Spacing parse_spacing(std::string_view name);

struct AxisRange {
  double min = 0.0;
  double max = 1.0;
  int count = 2;
  Spacing spacing = Spacing::kLinear;

  /// Throws std::invalid_argument on count < 2, min >= max, or log spacing with min <= 0.
  void validate() const;
  /// Grid points, endpoints included exactly.
  std::vector<double> values() const;
};

struct SweepSpec {
  std::vector<Strategy> strategies{Strategy::kDirect, Strategy::kLocalHeterodyne, Strategy::kTeleport};
  double epsilon = 0.3;
  double gamma = 1.0;
  double phi = std::numbers::pi / 4;
  /// Used when eta is not the swept axis.
  double eta = 1.0;
  Axis axis = Axis::kEta;
  AxisRange range;
  /// Teleport squeezing values; ignored when r is the swept axis.
  std::vector<Squeezing> squeezings{Squeezing::infinite()};
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;

  void validate() const;
};

struct SweepRow {
  Axis axis;
  double axis_value;
  Strategy strategy;
  /// Only meaningful for teleport rows.
  std::optional<Squeezing> squeezing;
  double eta;
  double epsilon;
  double gamma;
  double j_phi_per_photon;
  std::optional<double> j_gamma_per_photon;
};

/// Rows ordered by axis point, then strategy in spec order, then squeezing in
/// list order. On an eta axis, DI and infinite-squeezing teleport rows are
/// omitted at eta = 0.
/// Any other failure aborts the sweep with the offending grid point named.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

enum class Quantity { kPhi, kGamma };

std::string_view quantity_name(Quantity q);
Quantity parse_quantity(std::string_view name);

struct CrossoverQuery {
  Strategy first = Strategy::kTeleport;
  Strategy second = Strategy::kDirect;
  double epsilon = 0.3;
  double gamma = 1.0;
  double phi = std::numbers::pi / 4;
  Squeezing squeezing = Squeezing::infinite();
  double eta_lo = 0.01;
  double eta_hi = 0.99;
  double tolerance = 1e-6;
  Quantity quantity = Quantity::kPhi;

  void validate() const;
};

/// Per-photon difference first - second at eta.
double crossover_gap(const CrossoverQuery& q, double eta);

/// Bisection on crossover_gap down to a bracket narrower than q.tolerance.
/// Throws std::invalid_argument if the gap has the same sign at both ends.
double find_crossover(const CrossoverQuery& q);

}  // namespace sqfi
