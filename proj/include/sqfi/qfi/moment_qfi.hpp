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

// QFI matrix of a Gaussian family from its first and second moments:
//
//   J_jk = 1/2 d_j(vec cov)^T M^{-1} d_k(vec cov) + 2 d_j(mean)^T cov^{-1} d_k(mean),
//   M    = cov (x) cov - Omega (x) Omega.
//
// M is singular whenever the state has a pure symplectic mode, so pure and
// vacuum-like states are rejected with a SingularityError instead of being
// regularized.

#pragma once

#include <sstream>
#include <stdexcept>
#include <vector>

#include "sqfi/gaussian/linalg.hpp"
#include "sqfi/gaussian/state.hpp"
#include "sqfi/qfi/family.hpp"

namespace sqfi {

inline constexpr double kDefaultDifferenceStep = 1e-5;

/// Column-stacked vectorization of a square, even-dimensional matrix.
template <typename Scalar>
Vec<Scalar> vectorize_cov(const Mat<Scalar>& cov) {
  if (cov.rows() != cov.cols()) throw std::invalid_argument("vectorize_cov: matrix is not square");
  if (cov.rows() == 0 || cov.rows() % 2 != 0) {
    throw std::invalid_argument("vectorize_cov: dimension must be even and nonzero");
  }
  return Eigen::Map<const Vec<Scalar>>(cov.data(), cov.size());
}

/// M = cov (x) cov - Omega (x) Omega.
template <typename Scalar>
Mat<Scalar> qfi_moment_matrix(const Mat<Scalar>& cov) {
  const Mat<Scalar> omega = symplectic_form<Scalar>(static_cast<int>(cov.rows() / 2));
  return kron(cov, cov) - kron(omega, omega);
}

/// Central differences of the family's moments in every parameter.
template <typename Scalar>
std::vector<MomentDerivative<Scalar>> central_difference_derivatives(const GaussianFamily<Scalar>& family,
                                                                     const Vec<Scalar>& theta,
                                                                     Scalar step) {
  std::vector<MomentDerivative<Scalar>> out;
  out.reserve(family.n_params());
  for (int j = 0; j < family.n_params(); ++j) {
    Vec<Scalar> plus = theta;
    Vec<Scalar> minus = theta;
    plus(j) += step;
    minus(j) -= step;
    const auto sp = family.evaluate(plus);
    const auto sm = family.evaluate(minus);
    if (sp.dim() != sm.dim()) throw std::invalid_argument("qfi_matrix: family changes dimension with theta");
    out.push_back({(sp.mean() - sm.mean()) / (Scalar(2) * step), (sp.cov() - sm.cov()) / (Scalar(2) * step)});
  }
  return out;
}

/// QFI matrix of `family` at `theta`. Uses the family's analytic derivatives
/// when available, central differences with `step` otherwise.
template <typename Scalar>
FisherMatrix<Scalar> qfi_matrix(const GaussianFamily<Scalar>& family, const Vec<Scalar>& theta,
                                Scalar step = Scalar(kDefaultDifferenceStep)) {
  if (theta.size() != family.n_params()) {
    throw std::invalid_argument("qfi_matrix: parameter vector length does not match family");
  }
  const GaussianState<Scalar> state = family.evaluate(theta);
  const auto derivs = family.has_derivatives() ? family.derivatives(theta)
                                               : central_difference_derivatives(family, theta, step);
  if (static_cast<int>(derivs.size()) != family.n_params()) {
    throw std::invalid_argument("qfi_matrix: derivative count does not match family");
  }
  for (const auto& d : derivs) {
    if (d.mean.size() != state.dim() || d.cov.rows() != state.dim() || d.cov.cols() != state.dim()) {
      throw std::invalid_argument("qfi_matrix: derivative shape does not match state");
    }
  }

  const SymmetricSolver<Scalar> m_solver(
      qfi_moment_matrix<Scalar>(state.cov()),
      "qfi_matrix: moment matrix cov(x)cov - Omega(x)Omega (pure or near-pure state; "
      "use qfi_fidelity_limit instead)");
  const SymmetricSolver<Scalar> cov_solver(state.cov(), "qfi_matrix: covariance matrix");

  const int k = family.n_params();
  Mat<Scalar> dvec(state.dim() * state.dim(), k);
  Mat<Scalar> dmean(state.dim(), k);
  for (int j = 0; j < k; ++j) {
    dvec.col(j) = vectorize_cov<Scalar>(derivs[j].cov);
    dmean.col(j) = derivs[j].mean;
  }
  const Mat<Scalar> cov_term = dvec.transpose() * m_solver.solve(dvec) / Scalar(2);
  const Mat<Scalar> mean_term = Scalar(2) * dmean.transpose() * cov_solver.solve(dmean);
  return FisherMatrix<Scalar>(family.labels, symmetrized<Scalar>(cov_term + mean_term));
}

}  // namespace sqfi
