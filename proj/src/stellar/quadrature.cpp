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


#include "sqfi/stellar/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sqfi/errors.hpp"

namespace sqfi {

GaussHermiteRule gauss_hermite(int order) {
  if (order < 1 || order > 200) throw std::invalid_argument("gauss_hermite: order must be in [1, 200]");
  // Jacobi matrix of the monic Hermite recurrence.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(k / 2.0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  if (eig.info() != Eigen::Success) throw NumericalError("gauss_hermite: eigendecomposition failed");

  GaussHermiteRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const double mass = std::sqrt(std::numbers::pi);
  for (int i = 0; i < order; ++i) {
    rule.nodes[i] = eig.eigenvalues()(i);
    const double v = eig.eigenvectors()(0, i);
    rule.weights[i] = mass * v * v;
  }
  return rule;
}

double gaussian_expectation_2d(const std::function<double(double, double)>& f, double variance, int order) {
  if (!(variance > 0.0)) throw std::invalid_argument("gaussian_expectation_2d: variance must be positive");
  const GaussHermiteRule rule = gauss_hermite(order);
  const double scale = std::sqrt(2.0 * variance);
  double sum = 0.0;
  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < order; ++j) {
      sum += rule.weights[i] * rule.weights[j] * f(scale * rule.nodes[i], scale * rule.nodes[j]);
    }
  }
  return sum / std::numbers::pi;
}

}  // namespace sqfi
