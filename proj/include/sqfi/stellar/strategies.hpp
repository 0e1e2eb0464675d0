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


// Fisher information of the three interferometry strategies.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "sqfi/gaussian/state.hpp"
#include "sqfi/qfi/family.hpp"
#include "sqfi/stellar/params.hpp"
#include "sqfi/stellar/states.hpp"

namespace sqfi {

enum class Strategy { kDirect, kLocalHeterodyne, kTeleport };

/// "di", "local_het", "teleport".
std::string_view strategy_name(Strategy s);
Strategy parse_strategy(std::string_view name);

/// Slack on the off-diagonal (phi, gamma) entry, which vanishes identically.
inline constexpr double kCrossTolerance = 1e-10;
/// Lowest accepted diagonal entry; rounding may leave tiny negatives.
inline constexpr double kNegativeTolerance = 1e-10;

/// Diagonal (phi, gamma) Fisher information of one strategy.
/// j_gamma is absent at gamma = 1, where it diverges or is excluded.
class StrategyQFI {
 public:
  StrategyQFI(Strategy strategy, double j_phi, std::optional<double> j_gamma, double j_cross = 0.0);

  Strategy strategy() const { return strategy_; }
  double j_phi() const { return j_phi_; }
  bool has_j_gamma() const { return j_gamma_.has_value(); }
  /// Throws DomainError when absent.
  double j_gamma() const;
  const std::optional<double>& j_gamma_optional() const { return j_gamma_; }
  double j_cross() const { return j_cross_; }

 private:
  Strategy strategy_;
  double j_phi_;
  std::optional<double> j_gamma_;
  double j_cross_;
};

/// Direct interferometry: the source QFI with epsilon replaced by eta * epsilon. eta in (0, 1].
StrategyQFI di_qfi(const StellarParams& p, double eta);

/// Classical FI of separate heterodyne detection on A and B (no loss).
StrategyQFI local_heterodyne_fi(const StellarParams& p);

/// Closed-form outcome-averaged QFI of the teleported state; finite r only.
StrategyQFI teleport_qfi_closed(const StellarParams& p, const LinkParams& link);

namespace detail {
/// teleport_qfi_closed with the denominator Y of the X / Y term of J_gamma
/// multiplied by y_scale. Exists for mutation testing only.
StrategyQFI teleport_qfi_closed_scaled(const StellarParams& p, const LinkParams& link, long double y_scale);
}  // namespace detail

/// Gauss-Hermite average of the per-outcome QFI from the qfi engine.
/// Throws ConvergenceError if doubling the order moves a diagonal entry by
/// more than 1e-6 relative. Requires gamma < 1.
StrategyQFI teleport_qfi_ensemble(const StellarParams& p, const LinkParams& link, int quadrature_order = 8,
                                  ConditioningRoute route = ConditioningRoute::kClosedForm);

/// r -> infinity: QFI of the source with 2 (1 - eta) displacement noise on B.
StrategyQFI teleport_qfi_infinite_squeezing(const StellarParams& p, double eta);

/// Dispatch on finite or infinite squeezing.
StrategyQFI teleport_qfi(const StellarParams& p, const LinkParams& link);

/// Strategy by tag; the link is ignored by local heterodyne and only eta is used by DI.
StrategyQFI evaluate_strategy(Strategy s, const StellarParams& p, const LinkParams& link);

/// QFI matrix of the conditional state for outcome m (central differences).
FisherMatrixd teleport_outcome_qfi(const StellarParams& p, const LinkParams& link, const HomodyneOutcomed& m,
                                   ConditioningRoute route = ConditioningRoute::kClosedForm);

/// Fidelity-limit estimate of the per-outcome (J_phi, J_gamma), in long double.
std::pair<double, double> teleport_outcome_qfi_fidelity(const StellarParams& p, const LinkParams& link,
                                                        const HomodyneOutcomed& m, long double dtheta = 1e-4L);

/// Seeded sampler of double-homodyne outcomes. Each component is normal with
/// variance (1 + c + eps) / 2, independent of (phi, gamma).
class OutcomeSampler {
 public:
  OutcomeSampler(const StellarParams& p, const LinkParams& link, std::uint64_t seed);
  HomodyneOutcomed next();
  double component_variance() const { return variance_; }

 private:
  double variance_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

/// First draw of OutcomeSampler(p, link, seed).
HomodyneOutcomed sample_outcome(const StellarParams& p, const LinkParams& link, std::uint64_t seed);

}  // namespace sqfi
