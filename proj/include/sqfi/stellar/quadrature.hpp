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


// Gauss-Hermite rules for expectations over Gaussian densities.

#pragma once

#include <functional>
#include <vector>

namespace sqfi {

/// Nodes and weights for integral e^{-x^2} f(x) dx, exact for polynomial f of degree < 2n.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Golub-Welsch construction; order in [1, 200].
GaussHermiteRule gauss_hermite(int order);

/// E[f(x, y)] for x, y independent, zero mean, each with the given variance.
double gaussian_expectation_2d(const std::function<double(double, double)>& f, double variance, int order);

}  // namespace sqfi
