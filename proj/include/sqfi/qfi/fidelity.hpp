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

// Uhlmann fidelity between Gaussian states and the fidelity-limit QFI
//
//   J_j ~ 8 (1 - F(rho_{theta - h/2 e_j}, rho_{theta + h/2 e_j})) / h^2.
//
// Near-pure modes make the matrix square root below lose about half of the
// working digits (sqrt of a quantity that vanishes for pure modes), so
// callers needing tight agreement on weakly mixed states should instantiate
// these templates with long double or a multiprecision scalar. Exactly pure
// modes are fine: their radicand is snapped to zero.

#pragma once

#include <complex>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sqfi/errors.hpp"
#include "sqfi/gaussian/linalg.hpp"
#include "sqfi/gaussian/state.hpp"
#include "sqfi/qfi/family.hpp"

namespace sqfi {

inline constexpr double kFidelityImaginaryResidue = 1e-9;
inline constexpr double kDefaultFidelityStep = 1e-4;
inline constexpr double kPureModeSnap = 64.0;

namespace detail {

/// Fidelity without clamping to [0, 1]; rounding can push it slightly above 1.
template <typename Scalar>
Scalar gaussian_fidelity_unclamped(const GaussianState<Scalar>& a, const GaussianState<Scalar>& b) {
  using std::exp;
  using std::pow;
  using std::sqrt;
  using Complex = std::complex<Scalar>;

  if (a.n_modes() != b.n_modes()) throw std::invalid_argument("gaussian_fidelity: mode counts differ");
  require_physical(a, "gaussian_fidelity");
  require_physical(b, "gaussian_fidelity");

  const Mat<Scalar> omega = symplectic_form<Scalar>(a.n_modes());
  const Mat<Scalar> avg = (a.cov() + b.cov()) / Scalar(2);
  const SymmetricSolver<Scalar> avg_solver(avg, "gaussian_fidelity: averaged covariance");

  const Mat<Scalar> aux = omega.transpose() *
                          avg_solver.solve((omega + b.cov() * omega * a.cov()) / Scalar(4));
  const Mat<Scalar> aux_omega = aux * omega;

  Eigen::EigenSolver<Mat<Scalar>> eig(aux_omega, false);
  if (eig.info() != Eigen::Success) throw NumericalError("gaussian_fidelity: eigendecomposition failed");

  // det[2 (sqrt(1 + (aux Omega)^{-2} / 4) + 1) aux] = det(aux) * prod_k f(lambda_k).
  Complex product(Scalar(1), Scalar(0));
  const Complex one(Scalar(1), Scalar(0));
  for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
    const Complex lambda = eig.eigenvalues()(k);
    const Complex inv_sq = one / (lambda * lambda);
    Complex radicand = one + inv_sq / Complex(Scalar(4), Scalar(0));
    // Pure modes put this radicand at zero, where sqrt turns rounding noise
    // of size eps into sqrt(eps); snap values indistinguishable from zero.
    if (std::abs(radicand) < Scalar(kPureModeSnap) * std::numeric_limits<Scalar>::epsilon()) radicand = Complex(0, 0);
    product *= Complex(Scalar(2), Scalar(0)) * (sqrt(radicand) + one);
  }
  const Complex tot4 = product * Complex(aux.determinant(), Scalar(0));
  const Scalar re = tot4.real();
  const Scalar im = tot4.imag();
  const Scalar magnitude = sqrt(re * re + im * im);
  if (!(re > Scalar(0)) || (im < Scalar(0) ? -im : im) > Scalar(kFidelityImaginaryResidue) * magnitude) {
    std::ostringstream msg;
    msg << "gaussian_fidelity: F_tot^4 is not a positive real (" << static_cast<double>(re) << " + "
        << static_cast<double>(im) << "i)";
    throw NumericalError(msg.str());
  }

  const Scalar f0 = pow(re / avg.determinant(), Scalar(0.25));
  const Vec<Scalar> delta = a.mean() - b.mean();
  const Scalar quad = delta.dot(avg_solver.solve(delta).col(0));
  return f0 * exp(-quad / Scalar(4));
}

}  // namespace detail

/// Uhlmann fidelity F = Tr sqrt(sqrt(rho_a) rho_b sqrt(rho_a)) (no square on
/// the trace), computed from moments and clamped to [0, 1].
template <typename Scalar>
Scalar gaussian_fidelity(const GaussianState<Scalar>& a, const GaussianState<Scalar>& b) {
  const Scalar f = detail::gaussian_fidelity_unclamped(a, b);
  if (f > Scalar(1)) return Scalar(1);
  if (f < Scalar(0)) return Scalar(0);
  return f;
}

/// Fidelity-limit estimate of the diagonal QFI entry for parameter j.
///
/// The two states are placed symmetrically around theta, so the truncation
/// error is O(dtheta^2) relative; rounding contributes roughly eps / dtheta^2.
template <typename Scalar>
Scalar qfi_fidelity_limit(const GaussianFamily<Scalar>& family, const Vec<Scalar>& theta, int j,
                          Scalar dtheta = Scalar(kDefaultFidelityStep)) {
  if (j < 0 || j >= family.n_params()) throw std::invalid_argument("qfi_fidelity_limit: bad parameter index");
  if (!(dtheta > Scalar(0))) throw std::invalid_argument("qfi_fidelity_limit: dtheta must be positive");
  Vec<Scalar> lo = theta;
  Vec<Scalar> hi = theta;
  lo(j) -= dtheta / Scalar(2);
  hi(j) += dtheta / Scalar(2);
  const Scalar f = detail::gaussian_fidelity_unclamped(family.evaluate(lo), family.evaluate(hi));
  return Scalar(8) * (Scalar(1) - f) / (dtheta * dtheta);
}

}  // namespace sqfi
