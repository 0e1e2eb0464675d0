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


#include "sqfi/stellar/strategies.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sqfi/errors.hpp"
#include "sqfi/qfi/fidelity.hpp"
#include "sqfi/qfi/moment_qfi.hpp"
#include "sqfi/stellar/quadrature.hpp"

namespace sqfi {

namespace {

constexpr int kMaxQuadratureOrder = 120;
constexpr double kQuadratureTolerance = 1e-6;

void check_entry(double v, const char* what) {
  if (!std::isfinite(v) || v < -kNegativeTolerance) {
    std::ostringstream msg;
    msg << "StrategyQFI: " << what << " = " << v << " is not a finite non-negative value";
    throw NumericalError(msg.str());
  }
}

std::optional<double> gamma_entry(const StellarParams& p, double value) {
  if (p.gamma == 1.0) return std::nullopt;
  return value;
}

/// Stable closed form for finite r, written in terms of u = c - 1 and
/// delta = c^2 - s^2 so that neither large r nor r = 0 cancels.
std::pair<long double, long double> teleport_closed_long(const StellarParams& p, const LinkParams& link,
                                                         long double y_scale) {
  const long double e = p.epsilon;
  const long double g2 = static_cast<long double>(p.gamma) * p.gamma;
  const long double eta = link.eta;
  const long double u = link.c_minus_one();
  const long double c = 1.0L + u;
  const long double s = link.s_long();
  const long double delta = link.c2_minus_s2();
  const long double e2 = e * e;

  const long double d = c + e + 1.0L;
  const long double w = e * (e * (1.0L - g2) + 2.0L);
  const long double d1 = (e + 1.0L) * 2.0L * (1.0L - eta) * u + c * w;
  const long double d2 = (e + 1.0L) * delta + c * w + c;
  const long double n = delta + c * (e + 1.0L);

  const long double j_phi = 2.0L * g2 * e2 / d * (s * s / d1 + n / d2);

  if (p.gamma == 1.0) return {j_phi, 0.0L};

  const long double f4 = -g2 * e2 + (e + 2.0L) * delta + c * (e2 * (1.0L - g2) + 4.0L * e + 4.0L) + e2 +
                         3.0L * e + 2.0L;
  const long double f3 = 2.0L * (1.0L - eta) + e * (1.0L - g2);
  const long double q3 = 2.0L * e2 * (e + 2.0L) * (e * g2 + e + 2.0L);
  const long double q2 = 2.0L * e2 * (e + 2.0L) * (delta + 2.0L * e2 * g2 - e * g2 + e + 1.0L);
  const long double q1 = 2.0L * e2 *
                         (delta * e2 * g2 - delta * e2 - 4.0L * delta * e - 4.0L * delta - 2.0L * e2 * g2 -
                          2.0L * e * g2);
  const long double q0 = -2.0L * e2 *
                         (delta * delta * e + 2.0L * delta * delta - delta * e2 * g2 + delta * e2 +
                          3.0L * delta * e + 2.0L * delta - 2.0L * e2 * e * g2 - 4.0L * e2 * g2 -
                          2.0L * e * g2);
  const long double q = ((q3 * c + q2) * c + q1) * c + q0;
  const long double gterm = c * e * g2 + c * e + 2.0L * c - e2 * g2 + e2 - e * g2 + 3.0L * e + 2.0L;

  const long double xy = (q / (d * d1 * f4) + 4.0L * e2 * e * g2 * u * gterm / (f3 * d1 * f4)) / y_scale;
  const long double j_gamma = xy + 2.0L * e2 * n / (d * d2);
  return {j_phi, j_gamma};
}

/// Quadrature average of per-outcome (J_phi, J_gamma, J_cross).
std::array<double, 3> ensemble_average(const StellarParams& p, const LinkParams& link, int order,
                                       ConditioningRoute route) {
  const double c = link.c();
  const double variance = (1.0 + c + p.epsilon) / 2.0;
  const GaussHermiteRule rule = gauss_hermite(order);
  const double scale = std::sqrt(2.0 * variance);
  std::array<double, 3> sum{0.0, 0.0, 0.0};
  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < order; ++j) {
      const double w = rule.weights[i] * rule.weights[j] / std::numbers::pi;
      const HomodyneOutcomed m(scale * rule.nodes[i], scale * rule.nodes[j]);
      const FisherMatrixd f = teleport_outcome_qfi(p, link, m, route);
      sum[0] += w * f(kPhiIndex, kPhiIndex);
      sum[1] += w * f(kGammaIndex, kGammaIndex);
      sum[2] += w * f(kPhiIndex, kGammaIndex);
    }
  }
  return sum;
}

}  // namespace

std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kDirect:
      return "di";
    case Strategy::kLocalHeterodyne:
      return "local_het";
    case Strategy::kTeleport:
      return "teleport";
  }
  throw std::invalid_argument("strategy_name: unknown strategy");
}

Strategy parse_strategy(std::string_view name) {
  if (name == "di") return Strategy::kDirect;
  if (name == "local_het") return Strategy::kLocalHeterodyne;
  if (name == "teleport") return Strategy::kTeleport;
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "' (expected di, local_het or teleport)");
}

StrategyQFI::StrategyQFI(Strategy strategy, double j_phi, std::optional<double> j_gamma, double j_cross)
    : strategy_(strategy), j_phi_(j_phi), j_gamma_(j_gamma), j_cross_(j_cross) {
  check_entry(j_phi_, "J_phi");
  if (j_gamma_) check_entry(*j_gamma_, "J_gamma");
  if (!std::isfinite(j_cross_) || std::abs(j_cross_) > kCrossTolerance * std::max(1.0, j_phi_)) {
    std::ostringstream msg;
    msg << "StrategyQFI: off-diagonal entry " << j_cross_ << " should vanish";
    throw NumericalError(msg.str());
  }
}

double StrategyQFI::j_gamma() const {
  if (!j_gamma_) {
    throw DomainError("J_gamma is undefined at gamma = 1 (the source is on the boundary of the coherence domain)");
  }
  return *j_gamma_;
}

StrategyQFI di_qfi(const StellarParams& p, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw DomainError("di_qfi: eta must lie in (0, 1]; eta = 0 leaves only vacuum");
  }
  const double e = eta * p.epsilon;
  const double g2 = p.gamma * p.gamma;
  const double j_phi = 2.0 * g2 * e / (2.0 + e * (1.0 - g2));
  if (p.gamma == 1.0) return StrategyQFI(Strategy::kDirect, j_phi, std::nullopt);
  const double j_gamma = 2.0 * e * (2.0 + e + e * g2) / ((1.0 - g2) * (4.0 + 4.0 * e + e * e * (1.0 - g2)));
  return StrategyQFI(Strategy::kDirect, j_phi, j_gamma);
}

StrategyQFI local_heterodyne_fi(const StellarParams& p) {
  const double e = p.epsilon;
  const double g2 = p.gamma * p.gamma;
  const double base = (1.0 - g2) * e * e + 3.0 * e + 2.0;
  const double j_phi = 2.0 * g2 * e * e / base;
  const double correction =
      4.0 * g2 * e * e * e /
      ((g2 - 1.0) * (g2 - 1.0) * e * e * e - 6.0 * (g2 - 1.0) * e * e - 4.0 * (g2 - 3.0) * e + 8.0);
  return StrategyQFI(Strategy::kLocalHeterodyne, j_phi, gamma_entry(p, 2.0 * e * e / base + correction));
}

StrategyQFI teleport_qfi_closed(const StellarParams& p, const LinkParams& link) {
  return detail::teleport_qfi_closed_scaled(p, link, 1.0L);
}

StrategyQFI detail::teleport_qfi_closed_scaled(const StellarParams& p, const LinkParams& link, long double y_scale) {
  if (link.squeezing.is_infinite()) {
    throw DomainError("teleport_qfi_closed: needs finite r; use teleport_qfi_infinite_squeezing");
  }
  const auto [j_phi, j_gamma] = teleport_closed_long(p, link, y_scale);
  return StrategyQFI(Strategy::kTeleport, static_cast<double>(j_phi),
                     gamma_entry(p, static_cast<double>(j_gamma)));
}

StrategyQFI teleport_qfi_ensemble(const StellarParams& p, const LinkParams& link, int quadrature_order,
                                  ConditioningRoute route) {
  if (link.squeezing.is_infinite()) throw DomainError("teleport_qfi_ensemble: needs finite r");
  if (quadrature_order < 8 || 2 * quadrature_order > kMaxQuadratureOrder) {
    throw std::invalid_argument("teleport_qfi_ensemble: quadrature order must lie in [8, 60]");
  }
  if (!(p.gamma < 1.0 - 2.0 * kDefaultDifferenceStep)) {
    throw DomainError("teleport_qfi_ensemble: gamma must stay below 1 for central differences");
  }
  const auto coarse = ensemble_average(p, link, quadrature_order, route);
  const auto fine = ensemble_average(p, link, 2 * quadrature_order, route);
  for (int k = 0; k < 2; ++k) {
    const double change = std::abs(fine[k] - coarse[k]);
    if (change > kQuadratureTolerance * std::max(std::abs(fine[k]), 1e-300)) {
      std::ostringstream msg;
      msg << "teleport_qfi_ensemble: quadrature not converged (order " << quadrature_order << " -> "
          << 2 * quadrature_order << " changed entry " << k << " by " << change << ")";
      throw ConvergenceError(msg.str());
    }
  }
  return StrategyQFI(Strategy::kTeleport, fine[0], fine[1], fine[2]);
}

StrategyQFI teleport_qfi_infinite_squeezing(const StellarParams& p, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw DomainError(
        "teleport_qfi_infinite_squeezing: eta must lie in (0, 1]; at eta = 0 the strategy reduces to "
        "local_heterodyne_fi");
  }
  // At eta = 1 the teleported state is the source; with gamma = 1 it has a pure mode.
  if (eta == 1.0 && p.gamma == 1.0) {
    const StrategyQFI source = di_qfi(p, 1.0);
    return StrategyQFI(Strategy::kTeleport, source.j_phi(), std::nullopt);
  }
  const FisherMatrixd f =
      qfi_matrix(infinite_squeezing_family<double>(p.epsilon, eta), stellar_theta(p.phi, p.gamma));
  return StrategyQFI(Strategy::kTeleport, f(kPhiIndex, kPhiIndex),
                     gamma_entry(p, f(kGammaIndex, kGammaIndex)), f(kPhiIndex, kGammaIndex));
}

StrategyQFI teleport_qfi(const StellarParams& p, const LinkParams& link) {
  if (link.squeezing.is_infinite()) return teleport_qfi_infinite_squeezing(p, link.eta);
  return teleport_qfi_closed(p, link);
}

StrategyQFI evaluate_strategy(Strategy s, const StellarParams& p, const LinkParams& link) {
  switch (s) {
    case Strategy::kDirect:
      return di_qfi(p, link.eta);
    case Strategy::kLocalHeterodyne:
      return local_heterodyne_fi(p);
    case Strategy::kTeleport:
      return teleport_qfi(p, link);
  }
  throw std::invalid_argument("evaluate_strategy: unknown strategy");
}

FisherMatrixd teleport_outcome_qfi(const StellarParams& p, const LinkParams& link, const HomodyneOutcomed& m,
                                   ConditioningRoute route) {
  const auto family = teleport_outcome_family<double>(p.epsilon, link.eta, link.squeezing.r(), m, route);
  return qfi_matrix(family, stellar_theta(p.phi, p.gamma));
}

std::pair<double, double> teleport_outcome_qfi_fidelity(const StellarParams& p, const LinkParams& link,
                                                        const HomodyneOutcomed& m, long double dtheta) {
  using L = long double;
  const auto family = teleport_outcome_family<L>(p.epsilon, link.eta, link.squeezing.r(), m.cast<L>());
  const Vec<L> theta = stellar_theta<L>(p.phi, p.gamma);
  return {static_cast<double>(qfi_fidelity_limit(family, theta, kPhiIndex, dtheta)),
          static_cast<double>(qfi_fidelity_limit(family, theta, kGammaIndex, dtheta))};
}

OutcomeSampler::OutcomeSampler(const StellarParams& p, const LinkParams& link, std::uint64_t seed)
    : variance_((1.0 + link.c() + p.epsilon) / 2.0), engine_(seed), normal_(0.0, std::sqrt(variance_)) {
  if (link.squeezing.is_infinite()) throw DomainError("OutcomeSampler: needs finite r");
}

HomodyneOutcomed OutcomeSampler::next() {
  const double q = normal_(engine_);
  const double pp = normal_(engine_);
  return HomodyneOutcomed(q, pp);
}

HomodyneOutcomed sample_outcome(const StellarParams& p, const LinkParams& link, std::uint64_t seed) {
  return OutcomeSampler(p, link, seed).next();
}

}  // namespace sqfi
