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

// Gaussian channels and measurements as maps on (mean, cov).

#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "sqfi/gaussian/linalg.hpp"
#include "sqfi/gaussian/state.hpp"

namespace sqfi {

namespace detail {

inline void check_mode(int n_modes, int i, const char* where) {
  if (i < 0 || i >= n_modes) {
    std::ostringstream msg;
    msg << where << ": mode index " << i << " out of range for " << n_modes << " modes";
    throw std::invalid_argument(msg.str());
  }
}

inline void check_distinct(int i, int j, const char* where) {
  if (i == j) throw std::invalid_argument(std::string(where) + ": modes must be distinct");
}

/// Quadrature indices (2k, 2k+1) for each listed mode, in list order.
inline std::vector<int> quadrature_indices(const std::vector<int>& modes) {
  std::vector<int> idx;
  idx.reserve(2 * modes.size());
  for (int k : modes) {
    idx.push_back(2 * k);
    idx.push_back(2 * k + 1);
  }
  return idx;
}

template <typename Scalar>
void check_unit_interval(Scalar x, const char* name, const char* where) {
  if (!(x >= Scalar(0) && x <= Scalar(1))) {
    std::ostringstream msg;
    msg << where << ": " << name << " = " << static_cast<double>(x) << " outside [0, 1]";
    throw DomainError(msg.str());
  }
}

}  // namespace detail

/// Product state a (x) b; modes of a come first.
template <typename Scalar>
GaussianState<Scalar> tensor(const GaussianState<Scalar>& a, const GaussianState<Scalar>& b) {
  const int da = a.dim();
  const int db = b.dim();
  Vec<Scalar> mean(da + db);
  mean << a.mean(), b.mean();
  Mat<Scalar> cov = Mat<Scalar>::Zero(da + db, da + db);
  cov.topLeftCorner(da, da) = a.cov();
  cov.bottomRightCorner(db, db) = b.cov();
  return GaussianState<Scalar>(std::move(mean), std::move(cov));
}

/// Reduced state on `keep`. Kept modes appear in their original relative order.
template <typename Scalar>
GaussianState<Scalar> partial_trace(const GaussianState<Scalar>& s, std::vector<int> keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  for (int k : keep) detail::check_mode(s.n_modes(), k, "partial_trace");
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
    throw std::invalid_argument("partial_trace: duplicate mode index");
  }
  const auto idx = detail::quadrature_indices(keep);
  return GaussianState<Scalar>(s.mean()(idx), s.cov()(idx, idx));
}

/// Applies the 2k x 2k symplectic matrix `S` to the listed modes (in list order).
template <typename Scalar>
GaussianState<Scalar> apply_symplectic(const GaussianState<Scalar>& s, const Mat<Scalar>& S,
                                       const std::vector<int>& modes) {
  for (int k : modes) detail::check_mode(s.n_modes(), k, "apply_symplectic");
  const auto idx = detail::quadrature_indices(modes);
  if (S.rows() != static_cast<Eigen::Index>(idx.size()) || S.cols() != S.rows()) {
    throw std::invalid_argument("apply_symplectic: matrix size does not match mode list");
  }
  Mat<Scalar> full = Mat<Scalar>::Identity(s.dim(), s.dim());
  full(idx, idx) = S;
  Vec<Scalar> mean = full * s.mean();
  Mat<Scalar> cov = symmetrized<Scalar>(full * s.cov() * full.transpose());
  return GaussianState<Scalar>(std::move(mean), std::move(cov));
}

/// Real beamsplitter with the given transmissivity on modes (i, j):
///   x_i -> sqrt(T) x_i + sqrt(1-T) x_j,   x_j -> -sqrt(1-T) x_i + sqrt(T) x_j.
/// beamsplitter(s, j, i, T) is the inverse of beamsplitter(s, i, j, T).
template <typename Scalar>
Mat<Scalar> beamsplitter_matrix(Scalar transmissivity) {
  using std::sqrt;
  detail::check_unit_interval(transmissivity, "transmissivity", "beamsplitter");
  const Scalar t = sqrt(transmissivity);
  const Scalar r = sqrt(Scalar(1) - transmissivity);
  const Mat<Scalar> id = Mat<Scalar>::Identity(2, 2);
  Mat<Scalar> S(4, 4);
  S << t * id, r * id, -r * id, t * id;
  return S;
}

template <typename Scalar>
GaussianState<Scalar> beamsplitter(const GaussianState<Scalar>& s, int i, int j, Scalar transmissivity) {
  detail::check_distinct(i, j, "beamsplitter");
  return apply_symplectic(s, beamsplitter_matrix(transmissivity), {i, j});
}

/// Rotation of mode i in phase space: (q, p) -> (q cos t - p sin t, q sin t + p cos t).
template <typename Scalar>
GaussianState<Scalar> phase_shift(const GaussianState<Scalar>& s, int i, Scalar theta) {
  using std::cos;
  using std::sin;
  Mat<Scalar> R(2, 2);
  R << cos(theta), -sin(theta), sin(theta), cos(theta);
  return apply_symplectic(s, R, {i});
}

template <typename Scalar>
Mat<Scalar> two_mode_squeezer_matrix(Scalar r) {
  using std::cosh;
  using std::sinh;
  const Mat<Scalar> id = Mat<Scalar>::Identity(2, 2);
  const Mat<Scalar> z = pauli_z<Scalar>();
  Mat<Scalar> S(4, 4);
  S << cosh(r) * id, sinh(r) * z, sinh(r) * z, cosh(r) * id;
  return S;
}

/// Two-mode squeezer; acting on vacuum it gives blocks cosh(2r) 1 and sinh(2r) Z.
template <typename Scalar>
GaussianState<Scalar> two_mode_squeeze(const GaussianState<Scalar>& s, int i, int j, Scalar r) {
  detail::check_distinct(i, j, "two_mode_squeeze");
  if (r < Scalar(0)) throw DomainError("two_mode_squeeze: r must be non-negative");
  return apply_symplectic(s, two_mode_squeezer_matrix(r), {i, j});
}

/// Pure-loss channel with transmission eta on mode i.
template <typename Scalar>
GaussianState<Scalar> pure_loss(const GaussianState<Scalar>& s, int i, Scalar eta) {
  using std::sqrt;
  detail::check_mode(s.n_modes(), i, "pure_loss");
  detail::check_unit_interval(eta, "eta", "pure_loss");
  const Scalar root = sqrt(eta);
  Vec<Scalar> mean = s.mean();
  Mat<Scalar> cov = s.cov();
  mean.segment(2 * i, 2) *= root;
  cov.middleRows(2 * i, 2) *= root;
  cov.middleCols(2 * i, 2) *= root;
  // The diagonal block picks up eta from the two scalings above.
  cov.block(2 * i, 2 * i, 2, 2) += (Scalar(1) - eta) * Mat<Scalar>::Identity(2, 2);
  return GaussianState<Scalar>(std::move(mean), std::move(cov));
}

template <typename Scalar>
struct ConditionalState {
  GaussianState<Scalar> state;
  Scalar density;
};

/// Ideal double-homodyne (EPR) measurement of modes (i, j) with outcome m.
///
/// The measured commuting observables are m_q = q_j - q_i and m_p = p_i + p_j,
/// i.e. a 50:50 beamsplitter followed by q and p homodyne detection with
/// unnormalized outputs. This is the infinitely squeezed limit of projecting
/// onto a displaced two-mode squeezed state, evaluated exactly: no large
/// regulator is substituted. Unmeasured modes keep their relative order.
///
/// Returns the conditional state and the outcome density p(m) with respect to
/// dm_q dm_p.
template <typename Scalar>
ConditionalState<Scalar> condition_double_homodyne(const GaussianState<Scalar>& s, int i, int j,
                                                   const HomodyneOutcome<Scalar>& m) {
  using std::exp;
  using std::sqrt;
  if (s.n_modes() < 3) throw std::invalid_argument("condition_double_homodyne: need at least 3 modes");
  detail::check_mode(s.n_modes(), i, "condition_double_homodyne");
  detail::check_mode(s.n_modes(), j, "condition_double_homodyne");
  detail::check_distinct(i, j, "condition_double_homodyne");

  std::vector<int> kept;
  for (int k = 0; k < s.n_modes(); ++k) {
    if (k != i && k != j) kept.push_back(k);
  }
  const auto a = detail::quadrature_indices(kept);
  const auto b = detail::quadrature_indices({i, j});

  Mat<Scalar> D(2, 4);
  D << Scalar(-1), Scalar(0), Scalar(1), Scalar(0),
       Scalar(0), Scalar(1), Scalar(0), Scalar(1);

  const Mat<Scalar> gain = s.cov()(a, b) * D.transpose();
  const Mat<Scalar> outcome_cov = D * s.cov()(b, b) * D.transpose();
  const SymmetricSolver<Scalar> solver(outcome_cov, "condition_double_homodyne: outcome covariance");

  const Vec<Scalar> innovation = Vec<Scalar>(m.vector()) - D * s.mean()(b);
  const Vec<Scalar> weighted = solver.solve(innovation);

  Vec<Scalar> mean = s.mean()(a) + gain * weighted;
  Mat<Scalar> cov = symmetrized<Scalar>(s.cov()(a, a) - gain * solver.solve(gain.transpose()));
  const Scalar quad = innovation.dot(weighted);
  const Scalar density = exp(-quad) / (pi_v<Scalar>() * sqrt(outcome_cov.determinant()));
  return {GaussianState<Scalar>(std::move(mean), std::move(cov)), density};
}

}  // namespace sqfi
