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

#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sqfi/gaussian/linalg.hpp"
#include "sqfi/gaussian/state.hpp"

namespace sqfi {

/// Inherent slack allowed on Fisher-matrix symmetry and diagonal positivity.
inline constexpr double kFisherTolerance = 1e-10;

/// Partial derivative of (mean, cov) with respect to one parameter.
template <typename Scalar>
struct MomentDerivative {
  Vec<Scalar> mean;
  Mat<Scalar> cov;
};

/// A parameterized family theta -> Gaussian state.
///
/// `derivatives` is optional; when set it must return one MomentDerivative per
/// parameter, in label order.
template <typename Scalar>
struct GaussianFamily {
  using Params = Vec<Scalar>;

  std::vector<std::string> labels;
  std::function<GaussianState<Scalar>(const Params&)> evaluate;
  std::function<std::vector<MomentDerivative<Scalar>>(const Params&)> derivatives;

  int n_params() const { return static_cast<int>(labels.size()); }
  bool has_derivatives() const { return static_cast<bool>(derivatives); }
};

/// Symmetric k x k Fisher information matrix with named parameters.
template <typename Scalar>
class FisherMatrix {
 public:
  FisherMatrix(std::vector<std::string> labels, Mat<Scalar> values)
      : labels_(std::move(labels)), values_(std::move(values)) {
    const auto k = static_cast<Eigen::Index>(labels_.size());
    if (values_.rows() != k || values_.cols() != k) {
      throw std::invalid_argument("FisherMatrix: value matrix does not match label count");
    }
    using std::max;
    const Scalar scale = max(Scalar(1), max_abs(values_));
    if (max_asymmetry(values_) > Scalar(kFisherTolerance) * scale) {
      throw std::invalid_argument("FisherMatrix: values are not symmetric");
    }
    for (Eigen::Index i = 0; i < k; ++i) {
      if (values_(i, i) < -Scalar(kFisherTolerance) * scale) {
        std::ostringstream msg;
        msg << "FisherMatrix: negative diagonal entry for '" << labels_[i]
            << "' = " << static_cast<double>(values_(i, i));
        throw std::invalid_argument(msg.str());
      }
    }
  }

  const std::vector<std::string>& labels() const { return labels_; }
  const Mat<Scalar>& values() const { return values_; }
  int size() const { return static_cast<int>(labels_.size()); }

  Scalar operator()(int i, int j) const { return values_(i, j); }

  int index(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] == label) return static_cast<int>(i);
    }
    throw std::out_of_range("FisherMatrix: unknown parameter '" + label + "'");
  }

  Scalar at(const std::string& a, const std::string& b) const { return values_(index(a), index(b)); }

 private:
  std::vector<std::string> labels_;
  Mat<Scalar> values_;
};

using GaussianFamilyd = GaussianFamily<double>;
using FisherMatrixd = FisherMatrix<double>;

}  // namespace sqfi
