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

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>

#include "sqfi/errors.hpp"

namespace sqfi {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vecd = Vec<double>;
using Matd = Mat<double>;

/// pi at the precision of Scalar (also for multiprecision types).
template <typename Scalar>
Scalar pi_v() {
  using std::atan;
  return Scalar(4) * atan(Scalar(1));
}

/// Largest condition number accepted before a solve is refused.
inline constexpr double kMaxConditionNumber = 1e12;

/// Block-diagonal symplectic form over `n_modes` modes in (q1,p1,...,qn,pn) order.
template <typename Scalar = double>
Mat<Scalar> symplectic_form(int n_modes) {
  Mat<Scalar> omega = Mat<Scalar>::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = Scalar(1);
    omega(2 * k + 1, 2 * k) = Scalar(-1);
  }
  return omega;
}

/// Pauli-Z as a 2x2 quadrature block.
template <typename Scalar = double>
Eigen::Matrix<Scalar, 2, 2> pauli_z() {
  Eigen::Matrix<Scalar, 2, 2> z;
  z << Scalar(1), Scalar(0), Scalar(0), Scalar(-1);
  return z;
}

template <typename DerivedA, typename DerivedB>
Mat<typename DerivedA::Scalar> kron(const Eigen::MatrixBase<DerivedA>& a,
                                    const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Mat<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <typename Derived>
typename Derived::Scalar max_abs(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  return m.size() == 0 ? Scalar(0) : Scalar(m.cwiseAbs().maxCoeff());
}

/// Largest elementwise |a(i,j) - a(j,i)|.
template <typename Derived>
typename Derived::Scalar max_asymmetry(const Eigen::MatrixBase<Derived>& m) {
  return max_abs(m - m.transpose());
}

template <typename Scalar>
Mat<Scalar> symmetrized(const Mat<Scalar>& m) {
  return (m + m.transpose()) / Scalar(2);
}

template <typename Scalar>
bool all_finite(const Mat<Scalar>& m) {
  using std::isfinite;
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    if (!isfinite(m.data()[i])) return false;
  }
  return true;
}

/// Linear solver for a real symmetric matrix that refuses to work on
/// (numerically) singular input. The condition number is the exact ratio of
/// extreme eigenvalue magnitudes; solves go through the eigenbasis so no
/// inverse is ever formed.
template <typename Scalar>
class SymmetricSolver {
 public:
  SymmetricSolver(const Mat<Scalar>& a, std::string_view what,
                  double max_condition = kMaxConditionNumber)
      : eig_(a) {
    using std::abs;
    if (eig_.info() != Eigen::Success) {
      throw NumericalError(std::string(what) + ": eigendecomposition failed");
    }
    const Vec<Scalar> magnitudes = eig_.eigenvalues().cwiseAbs();
    const Scalar largest = magnitudes.maxCoeff();
    const Scalar smallest = magnitudes.minCoeff();
    condition_ = smallest > Scalar(0) ? static_cast<double>(largest / smallest)
                                      : std::numeric_limits<double>::infinity();
    if (!(condition_ <= max_condition)) {
      std::ostringstream msg;
      msg << what << " is singular to working precision (condition number "
          << condition_ << " exceeds " << max_condition << ")";
      throw SingularityError(msg.str());
    }
  }

  double condition() const { return condition_; }

  template <typename Rhs>
  Mat<Scalar> solve(const Eigen::MatrixBase<Rhs>& b) const {
    const auto& v = eig_.eigenvectors();
    Mat<Scalar> projected = v.transpose() * b;
    projected.array().colwise() /= eig_.eigenvalues().array();
    return v * projected;
  }

 private:
  Eigen::SelfAdjointEigenSolver<Mat<Scalar>> eig_;
  double condition_ = 0.0;
};

}  // namespace sqfi
