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

// Stellar source, teleportation link and the states they produce.
//
// Mode labels: the source occupies A (local) and B (remote). The TMSV link
// occupies C (kept next to A) and D (sent to B). When composed, modes are
// ordered (A, B, C, D), and the double-homodyne measurement acts on (B, D).

#pragma once

#include <cmath>
#include <vector>

#include "sqfi/errors.hpp"
#include "sqfi/gaussian/linalg.hpp"
#include "sqfi/gaussian/operations.hpp"
#include "sqfi/gaussian/state.hpp"
#include "sqfi/qfi/family.hpp"

namespace sqfi {

/// Stellar parameter vector layout used by every family in this header.
inline constexpr int kPhiIndex = 0;
inline constexpr int kGammaIndex = 1;

inline const std::vector<std::string>& stellar_labels() {
  static const std::vector<std::string> labels{"phi", "gamma"};
  return labels;
}

/// Rotation [[cos t, -sin t], [sin t, cos t]].
template <typename Scalar>
Mat<Scalar> rotation(Scalar t) {
  using std::cos;
  using std::sin;
  Mat<Scalar> R(2, 2);
  R << cos(t), -sin(t), sin(t), cos(t);
  return R;
}

/// Covariance of the correlated thermal source on (A, B):
/// diagonal blocks (eps + 1) 1, cross block gamma * eps * rotation(phi).
template <typename Scalar>
Mat<Scalar> stellar_cov(Scalar epsilon, Scalar gamma, Scalar phi) {
  Mat<Scalar> cov = (epsilon + Scalar(1)) * Mat<Scalar>::Identity(4, 4);
  const Mat<Scalar> cross = gamma * epsilon * rotation(phi);
  cov.block(0, 2, 2, 2) = cross;
  cov.block(2, 0, 2, 2) = cross.transpose();
  return cov;
}

template <typename Scalar>
GaussianState<Scalar> stellar_state(Scalar epsilon, Scalar gamma, Scalar phi) {
  if (!(epsilon > Scalar(0))) throw DomainError("stellar_state: epsilon must be positive");
  if (!(gamma >= Scalar(0) && gamma <= Scalar(1))) throw DomainError("stellar_state: gamma outside [0, 1]");
  return GaussianState<Scalar>(Vec<Scalar>::Zero(4), stellar_cov(epsilon, gamma, phi));
}

/// d cov / d phi and d cov / d gamma of stellar_cov (cross blocks only).
template <typename Scalar>
std::vector<MomentDerivative<Scalar>> stellar_cov_derivatives(Scalar epsilon, Scalar gamma, Scalar phi) {
  using std::cos;
  using std::sin;
  Mat<Scalar> d_rot(2, 2);
  d_rot << -sin(phi), -cos(phi), cos(phi), -sin(phi);
  auto place = [](const Mat<Scalar>& cross) {
    Mat<Scalar> out = Mat<Scalar>::Zero(4, 4);
    out.block(0, 2, 2, 2) = cross;
    out.block(2, 0, 2, 2) = cross.transpose();
    return out;
  };
  return {{Vec<Scalar>::Zero(4), place(gamma * epsilon * d_rot)},
          {Vec<Scalar>::Zero(4), place(epsilon * rotation(phi))}};
}

/// Family theta = (phi, gamma) of stellar states at fixed epsilon.
/// Analytic derivatives are attached unless `analytic` is false.
template <typename Scalar>
GaussianFamily<Scalar> stellar_family(Scalar epsilon, bool analytic = true) {
  GaussianFamily<Scalar> family;
  family.labels = stellar_labels();
  family.evaluate = [epsilon](const Vec<Scalar>& th) {
    return GaussianState<Scalar>(Vec<Scalar>::Zero(4), stellar_cov(epsilon, th(kGammaIndex), th(kPhiIndex)));
  };
  if (analytic) {
    family.derivatives = [epsilon](const Vec<Scalar>& th) {
      return stellar_cov_derivatives(epsilon, th(kGammaIndex), th(kPhiIndex));
    };
  }
  return family;
}

/// c and s of a lossy TMSV, with c formed as 1 + 2 eta sinh^2 r.
template <typename Scalar>
struct LinkMoments {
  Scalar c;
  Scalar s;
};

template <typename Scalar>
LinkMoments<Scalar> link_moments(Scalar eta, Scalar r) {
  using std::sinh;
  const Scalar sh = sinh(r);
  return {Scalar(1) + Scalar(2) * eta * sh * sh, eta * sinh(Scalar(2) * r)};
}

/// TMSV on two vacua followed by pure loss eta on both arms.
template <typename Scalar>
GaussianState<Scalar> lossy_tmsv(Scalar eta, Scalar r) {
  auto s = two_mode_squeeze(GaussianState<Scalar>::vacuum(2), 0, 1, r);
  s = pure_loss(s, 0, eta);
  return pure_loss(s, 1, eta);
}

/// Source on (A, B) composed with the lossy link on (C, D).
template <typename Scalar>
GaussianState<Scalar> teleport_input_state(Scalar epsilon, Scalar gamma, Scalar phi, Scalar eta, Scalar r) {
  return tensor(stellar_state(epsilon, gamma, phi), lossy_tmsv(eta, r));
}

/// Closed-form moments of the (A, C) state left after the double-homodyne
/// measurement of (B, D). With d = 1 + c + eps:
///   mean  = mean_map * m,  mean_map = [-gamma eps R(phi) Z / d ; s Z / d]
///   cov   = [[kappa 1, X], [X^T, lambda 1]],  X = [[mu, -nu], [nu, mu]]
///   kappa = eps + 1 - (gamma eps)^2 / d,  lambda = c - s^2 / d,
///   mu + i nu = s gamma eps e^{i phi} / d.
/// The outcome density is isotropic with per-quadrature variance d / 2.
template <typename Scalar>
struct ConditionalMoments {
  Scalar kappa;
  Scalar lambda;
  Scalar mu;
  Scalar nu;
  Mat<Scalar> mean_map;
  Mat<Scalar> cov;
  Scalar density_variance;

  Vec<Scalar> mean(const HomodyneOutcome<Scalar>& m) const { return mean_map * Vec<Scalar>(m.vector()); }

  Scalar density(const HomodyneOutcome<Scalar>& m) const {
    using std::exp;
    const Scalar two_var = Scalar(2) * density_variance;
    return exp(-m.squared_norm() / two_var) / (pi_v<Scalar>() * two_var);
  }
};

template <typename Scalar>
ConditionalMoments<Scalar> teleport_conditional_moments(Scalar epsilon, Scalar gamma, Scalar phi, Scalar c,
                                                        Scalar s) {
  using std::cos;
  using std::sin;
  const Scalar d = Scalar(1) + c + epsilon;
  const Scalar ge = gamma * epsilon;
  ConditionalMoments<Scalar> out;
  out.kappa = epsilon + Scalar(1) - ge * ge / d;
  out.lambda = c - s * s / d;
  out.mu = s * ge * cos(phi) / d;
  out.nu = s * ge * sin(phi) / d;
  out.density_variance = d / Scalar(2);

  const Mat<Scalar> z = pauli_z<Scalar>();
  out.mean_map.resize(4, 2);
  out.mean_map.topRows(2) = -ge * rotation(phi) * z / d;
  out.mean_map.bottomRows(2) = s * z / d;

  Mat<Scalar> x(2, 2);
  x << out.mu, -out.nu, out.nu, out.mu;
  out.cov = Mat<Scalar>::Zero(4, 4);
  out.cov.topLeftCorner(2, 2) = out.kappa * Mat<Scalar>::Identity(2, 2);
  out.cov.bottomRightCorner(2, 2) = out.lambda * Mat<Scalar>::Identity(2, 2);
  out.cov.topRightCorner(2, 2) = x;
  out.cov.bottomLeftCorner(2, 2) = x.transpose();
  return out;
}

/// Conditional (A, C) state and outcome density from the closed form.
template <typename Scalar>
ConditionalState<Scalar> teleport_conditional(Scalar epsilon, Scalar gamma, Scalar phi, Scalar eta, Scalar r,
                                              const HomodyneOutcome<Scalar>& m) {
  const auto link = link_moments(eta, r);
  const auto cm = teleport_conditional_moments(epsilon, gamma, phi, link.c, link.s);
  return {GaussianState<Scalar>(cm.mean(m), cm.cov), cm.density(m)};
}

/// The same conditional state obtained by composing the 4-mode input and
/// running the generic double-homodyne conditioning on (B, D).
template <typename Scalar>
ConditionalState<Scalar> teleport_conditional_pipeline(Scalar epsilon, Scalar gamma, Scalar phi, Scalar eta,
                                                       Scalar r, const HomodyneOutcome<Scalar>& m) {
  return condition_double_homodyne(teleport_input_state(epsilon, gamma, phi, eta, r), 1, 3, m);
}

enum class ConditioningRoute { kClosedForm, kPipeline };

/// Per-outcome family theta = (phi, gamma) of conditional states at fixed m.
///
/// When s == 0 (r = 0 or eta = 0) mode C is an uncorrelated vacuum and is
/// traced out, since a pure factor makes the moment matrix singular without
/// carrying information.
template <typename Scalar>
GaussianFamily<Scalar> teleport_outcome_family(Scalar epsilon, Scalar eta, Scalar r, HomodyneOutcome<Scalar> m,
                                               ConditioningRoute route = ConditioningRoute::kClosedForm) {
  const bool drop_c = link_moments(eta, r).s == Scalar(0);
  GaussianFamily<Scalar> family;
  family.labels = stellar_labels();
  family.evaluate = [=](const Vec<Scalar>& th) {
    const Scalar gamma = th(kGammaIndex);
    const Scalar phi = th(kPhiIndex);
    auto cond = route == ConditioningRoute::kClosedForm
                    ? teleport_conditional(epsilon, gamma, phi, eta, r, m)
                    : teleport_conditional_pipeline(epsilon, gamma, phi, eta, r, m);
    return drop_c ? partial_trace(cond.state, {0}) : cond.state;
  };
  return family;
}

/// Covariance of the infinitely squeezed teleported state: the source with an
/// extra 2 (1 - eta) 1 of Gaussian displacement noise on mode B.
template <typename Scalar>
Mat<Scalar> infinite_squeezing_cov(Scalar epsilon, Scalar gamma, Scalar phi, Scalar eta) {
  Mat<Scalar> cov = stellar_cov(epsilon, gamma, phi);
  cov.block(2, 2, 2, 2) += Scalar(2) * (Scalar(1) - eta) * Mat<Scalar>::Identity(2, 2);
  return cov;
}

template <typename Scalar>
GaussianFamily<Scalar> infinite_squeezing_family(Scalar epsilon, Scalar eta) {
  if (!(eta > Scalar(0) && eta <= Scalar(1))) {
    throw DomainError("infinite_squeezing_family: eta must lie in (0, 1]; at eta = 0 use local heterodyne");
  }
  GaussianFamily<Scalar> family;
  family.labels = stellar_labels();
  family.evaluate = [epsilon, eta](const Vec<Scalar>& th) {
    return GaussianState<Scalar>(Vec<Scalar>::Zero(4),
                                 infinite_squeezing_cov(epsilon, th(kGammaIndex), th(kPhiIndex), eta));
  };
  // The added noise is parameter-free, so the derivatives are the source's.
  family.derivatives = [epsilon](const Vec<Scalar>& th) {
    return stellar_cov_derivatives(epsilon, th(kGammaIndex), th(kPhiIndex));
  };
  return family;
}

template <typename Scalar>
Vec<Scalar> stellar_theta(Scalar phi, Scalar gamma) {
  Vec<Scalar> th(2);
  th(kPhiIndex) = phi;
  th(kGammaIndex) = gamma;
  return th;
}

}  // namespace sqfi
