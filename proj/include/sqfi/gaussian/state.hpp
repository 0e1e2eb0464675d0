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

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "sqfi/gaussian/linalg.hpp"

namespace sqfi {

/// Slack on max |cov(i,j) - cov(j,i)|, relative to max(1, max |cov|).
inline constexpr double kSymmetryTolerance = 1e-12;

/// Slack on the smallest eigenvalue of cov + i*Omega, relative to max(1, max |cov|).
inline constexpr double kPhysicalityTolerance = 1e-9;

/// A multimode Gaussian state: first and second quadrature moments.
///
/// Quadratures are ordered (q1, p1, q2, p2, ...). The covariance uses the
/// symmetrized (anticommutator) convention, so the vacuum has cov = identity
/// and a single quadrature of the vacuum has variance 1/2.
///
/// Construction checks shape, finiteness and symmetry. Physicality
/// (cov + i*Omega >= 0) is a separate, more expensive check: see is_physical().
template <typename Scalar>
class GaussianState {
 public:
  using VectorType = Vec<Scalar>;
  using MatrixType = Mat<Scalar>;

  GaussianState(VectorType mean, MatrixType cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
    if (cov_.rows() == 0 || cov_.rows() % 2 != 0 || cov_.rows() != cov_.cols()) {
      throw std::invalid_argument("GaussianState: covariance must be square with even, nonzero dimension");
    }
    if (mean_.size() != cov_.rows()) {
      throw std::invalid_argument("GaussianState: mean length does not match covariance dimension");
    }
    if (!all_finite<Scalar>(mean_) || !all_finite<Scalar>(cov_)) {
      throw std::invalid_argument("GaussianState: non-finite moment");
    }
    using std::max;
    const Scalar scale = max(Scalar(1), max_abs(cov_));
    if (max_asymmetry(cov_) > Scalar(kSymmetryTolerance) * scale) {
      std::ostringstream msg;
      msg << "GaussianState: covariance is not symmetric (max asymmetry "
          << static_cast<double>(max_asymmetry(cov_)) << ")";
      throw std::invalid_argument(msg.str());
    }
  }

  static GaussianState vacuum(int n_modes) {
    if (n_modes < 1) throw std::invalid_argument("vacuum: n_modes must be positive");
    return GaussianState(VectorType::Zero(2 * n_modes), MatrixType::Identity(2 * n_modes, 2 * n_modes));
  }

  /// Single-mode thermal state with the given mean photon number.
  static GaussianState thermal(Scalar mean_photons) {
    if (mean_photons < Scalar(0)) throw std::invalid_argument("thermal: negative photon number");
    return GaussianState(VectorType::Zero(2),
                         (Scalar(2) * mean_photons + Scalar(1)) * MatrixType::Identity(2, 2));
  }

  /// Coherent state: vacuum noise displaced to `mean`.
  static GaussianState coherent(VectorType mean) {
    const auto dim = mean.size();
    return GaussianState(std::move(mean), MatrixType::Identity(dim, dim));
  }

  int n_modes() const { return static_cast<int>(mean_.size() / 2); }
  int dim() const { return static_cast<int>(mean_.size()); }
  const VectorType& mean() const { return mean_; }
  const MatrixType& cov() const { return cov_; }

  /// 2x2 covariance block between modes i and j.
  MatrixType block(int i, int j) const { return cov_.block(2 * i, 2 * j, 2, 2); }

  template <typename To>
  GaussianState<To> cast() const {
    return GaussianState<To>(mean_.template cast<To>(), cov_.template cast<To>());
  }

 private:
  VectorType mean_;
  MatrixType cov_;
};

using GaussianStated = GaussianState<double>;

/// Outcome of a double-homodyne (EPR) measurement on a pair of modes.
template <typename Scalar>
struct HomodyneOutcome {
  Scalar m_q{0};
  Scalar m_p{0};

  HomodyneOutcome() = default;
  HomodyneOutcome(Scalar q, Scalar p) : m_q(q), m_p(p) {
    using std::isfinite;
    if (!isfinite(m_q) || !isfinite(m_p)) {
      throw std::invalid_argument("HomodyneOutcome: non-finite component");
    }
  }

  Eigen::Matrix<Scalar, 2, 1> vector() const { return {m_q, m_p}; }
  Scalar squared_norm() const { return m_q * m_q + m_p * m_p; }

  template <typename To>
  HomodyneOutcome<To> cast() const {
    return HomodyneOutcome<To>(To(m_q), To(m_p));
  }
};

using HomodyneOutcomed = HomodyneOutcome<double>;

/// Smallest eigenvalue of the Hermitian matrix cov + i*Omega.
template <typename Scalar>
Scalar min_uncertainty_eigenvalue(const GaussianState<Scalar>& s) {
  using Complex = std::complex<Scalar>;
  using CMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
  const Mat<Scalar> omega = symplectic_form<Scalar>(s.n_modes());
  CMat h(s.dim(), s.dim());
  for (int i = 0; i < s.dim(); ++i) {
    for (int j = 0; j < s.dim(); ++j) h(i, j) = Complex(s.cov()(i, j), omega(i, j));
  }
  Eigen::SelfAdjointEigenSolver<CMat> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

/// Uncertainty relation cov + i*Omega >= -tol, with tol scaled by max(1, max |cov|).
template <typename Scalar>
bool is_physical(const GaussianState<Scalar>& s, double tolerance = kPhysicalityTolerance) {
  using std::max;
  const Scalar scale = max(Scalar(1), max_abs(s.cov()));
  return min_uncertainty_eigenvalue(s) >= -Scalar(tolerance) * scale;
}

template <typename Scalar>
void require_physical(const GaussianState<Scalar>& s, const char* where) {
  if (!is_physical(s)) {
    std::ostringstream msg;
    msg << where << ": state violates the uncertainty relation (min eigenvalue of cov + i*Omega = "
        << static_cast<double>(min_uncertainty_eigenvalue(s)) << ")";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace sqfi
