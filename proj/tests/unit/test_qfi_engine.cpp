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


#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles/oracles.hpp"
#include "sqfi/errors.hpp"
#include "sqfi/gaussian/operations.hpp"
#include "sqfi/qfi/fidelity.hpp"
#include "sqfi/qfi/moment_qfi.hpp"
#include "sqfi/stellar/params.hpp"
#include "sqfi/stellar/states.hpp"
#include "sqfi/stellar/strategies.hpp"

using namespace sqfi;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

FisherMatrixd stellar_qfi(double e, double g, double phi, bool analytic = true) {
  return qfi_matrix(stellar_family(e, analytic), stellar_theta(phi, g));
}

GaussianFamilyd constant_family() {
  GaussianFamilyd f;
  f.labels = {"x"};
  f.evaluate = [](const Vecd&) { return GaussianStated::thermal(0.4); };
  return f;
}

}  // namespace

TEST(VectorizeCov, ColumnStacking) {
  const Vecd v = vectorize_cov<double>(Matd::Identity(2, 2));
  ASSERT_EQ(v.size(), 4);
  EXPECT_EQ(v(0), 1.0);
  EXPECT_EQ(v(1), 0.0);
  EXPECT_EQ(v(2), 0.0);
  EXPECT_EQ(v(3), 1.0);

  const Matd cov = stellar_cov(1.0, 1.0, 0.0);
  const Vecd s = vectorize_cov(cov);
  for (int col = 0; col < 4; ++col) {
    for (int row = 0; row < 4; ++row) {
      const double expected = row == col ? 2.0 : (std::abs(row - col) == 2 ? 1.0 : 0.0);
      EXPECT_EQ(s(4 * col + row), expected) << row << "," << col;
    }
  }

  oracle::Draw draw(1);
  Matd a = Matd::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = draw.normal(1.0);
  const Matd sym = a + a.transpose();
  const Matd rows_first = sym.transpose();
  EXPECT_EQ((vectorize_cov(sym) - vectorize_cov(rows_first)).cwiseAbs().maxCoeff(), 0.0);

  EXPECT_THROW(vectorize_cov<double>(Matd::Identity(2, 3)), std::invalid_argument);
  EXPECT_THROW(vectorize_cov<double>(Matd::Identity(3, 3)), std::invalid_argument);
}

TEST(QfiMatrix, StellarClosedFormsOnGrid) {
  for (double e : {0.05, 0.3, 0.7, 1.2, 2.0}) {
    for (double g : {0.05, 0.25, 0.5, 0.75, 0.95}) {
      const auto j = stellar_qfi(e, g, std::numbers::pi / 4);
      EXPECT_LT(rel(j.at("phi", "phi"), oracle::source_j_phi(e, g)), 1e-8);
      EXPECT_LT(rel(j.at("gamma", "gamma"), oracle::source_j_gamma(e, g)), 1e-8);
      EXPECT_LT(std::abs(j.at("phi", "gamma")), 1e-10);
    }
  }
}

TEST(QfiMatrix, ZeroCoherenceHidesPhase) {
  for (double e : {0.1, 1.0}) {
    EXPECT_EQ(stellar_qfi(e, 0.0, 1.0).at("phi", "phi"), 0.0);
  }
}

TEST(QfiMatrix, PureModeIsSingular) {
  // At gamma = 1 one symplectic mode is vacuum, so M cannot be inverted.
  EXPECT_THROW(stellar_qfi(0.3, 1.0, 0.5), SingularityError);
  EXPECT_THROW(qfi_matrix(stellar_family(0.3), stellar_theta(0.5, 1.0 - 1e-14)), SingularityError);
}

TEST(QfiMatrix, CoherentLimitByFidelityRoute) {
  // qfi_matrix rejects the pure mode at gamma = 1; the fidelity route does not.
  const double j = qfi_fidelity_limit(stellar_family(0.3), stellar_theta(0.5, 1.0), kPhiIndex, 1e-4);
  EXPECT_LT(rel(j / 0.3, 1.0), 1e-4);
  const long double jl =
      qfi_fidelity_limit(stellar_family<long double>(0.3L), stellar_theta<long double>(0.5L, 1.0L), kPhiIndex);
  EXPECT_LT(rel(static_cast<double>(jl) / 0.3, 1.0), 1e-6);
  EXPECT_EQ(di_qfi(StellarParams(0.3, 1.0), 1.0).j_phi() / 0.3, 1.0);
}

TEST(QfiMatrix, AnalyticMatchesFiniteDifference) {
  for (double e : {0.05, 0.5, 2.0}) {
    for (double g : {0.1, 0.6, 0.95}) {
      const auto a = stellar_qfi(e, g, 2.0, true);
      const auto f = stellar_qfi(e, g, 2.0, false);
      EXPECT_LT(rel(f(0, 0), a(0, 0)), 1e-8);
      EXPECT_LT(rel(f(1, 1), a(1, 1)), 1e-8);
      EXPECT_LT(std::abs(f(0, 1)), 1e-8);
    }
  }
}

TEST(QfiMatrix, RichardsonConvergence) {
  // cov is linear in gamma, so only phi carries truncation error.
  const auto fam = stellar_family(0.7, false);
  const Vecd th = stellar_theta(1.1, 0.6);
  const double h = 2e-2;
  const double exact = oracle::source_j_phi(0.7, 0.6);
  const double j_h = qfi_matrix(fam, th, h)(0, 0);
  const double j_h2 = qfi_matrix(fam, th, h / 2)(0, 0);
  const double ratio = (j_h - exact) / (j_h2 - exact);
  EXPECT_GT(ratio, 3.5);
  EXPECT_LT(ratio, 4.5);
  // Halving changes the entry by less than 4x the leading h^2 term.
  const double leading = std::abs(j_h - exact);
  EXPECT_LT(std::abs(j_h - j_h2), 4 * leading);
  EXPECT_LT(std::abs(qfi_matrix(fam, th, 1e-5)(1, 1) - oracle::source_j_gamma(0.7, 0.6)), 1e-6);
}

TEST(QfiMatrix, ReparameterisationScalesByInverseSquare) {
  const double a = 3.0, e = 0.8, g = 0.4;
  GaussianFamilyd scaled;
  scaled.labels = {"phi", "gamma"};
  scaled.evaluate = [&](const Vecd& th) {
    return GaussianStated(Vecd::Zero(4), stellar_cov(e, th(kGammaIndex), th(kPhiIndex) / a));
  };
  const auto j = qfi_matrix(scaled, stellar_theta(a * 0.9, g));
  EXPECT_LT(rel(j(0, 0), oracle::source_j_phi(e, g) / (a * a)), 1e-8);
}

TEST(QfiMatrix, ConstantFamilyAndErrors) {
  const auto j = qfi_matrix(constant_family(), Vecd(Vecd::Zero(1)));
  EXPECT_EQ(j(0, 0), 0.0);
  EXPECT_EQ(qfi_fidelity_limit(constant_family(), Vecd(Vecd::Zero(1)), 0), 0.0);
  EXPECT_THROW(qfi_matrix(constant_family(), Vecd(Vecd::Zero(2))), std::invalid_argument);
  EXPECT_THROW(qfi_fidelity_limit(constant_family(), Vecd(Vecd::Zero(1)), 1), std::invalid_argument);
  GaussianFamilyd vac;
  vac.labels = {"x"};
  vac.evaluate = [](const Vecd&) { return GaussianStated::vacuum(1); };
  EXPECT_THROW(qfi_matrix(vac, Vecd(Vecd::Zero(1))), SingularityError);
}

TEST(QfiMatrix, MeanTermWithVacuumNoise) {
  // Displaced thermal state: J = 2 / (2 nbar + 1) for the displacement.
  GaussianFamilyd fam;
  fam.labels = {"x"};
  fam.evaluate = [](const Vecd& th) {
    Vecd mean = Vecd::Zero(2);
    mean(0) = th(0);
    return GaussianStated(mean, GaussianStated::thermal(0.5).cov());
  };
  EXPECT_NEAR(qfi_matrix(fam, Vecd(Vecd::Zero(1)))(0, 0), 1.0, 1e-9);
}

TEST(FisherMatrix, Invariants) {
  Matd v(2, 2);
  v << 1, 2, 2.1, 1;
  EXPECT_THROW(FisherMatrixd({"a", "b"}, v), std::invalid_argument);
  v << -1, 0, 0, 1;
  EXPECT_THROW(FisherMatrixd({"a", "b"}, v), std::invalid_argument);
  EXPECT_THROW(FisherMatrixd({"a"}, v), std::invalid_argument);
  v << 1, 0, 0, 1;
  EXPECT_THROW(FisherMatrixd({"a", "b"}, v).at("c", "a"), std::out_of_range);
}

TEST(Fidelity, IdentityCoherentAndThermal) {
  oracle::Draw draw(13);
  for (int k = 0; k < 10; ++k) {
    auto s = two_mode_squeeze(tensor(GaussianStated::thermal(draw.uniform(0, 1)), GaussianStated::thermal(0.2)), 0, 1,
                              draw.uniform(0, 1));
    EXPECT_NEAR(gaussian_fidelity(s, s), 1.0, 1e-10);
  }
  for (double d : {0.1, 0.7, 2.5}) {
    Vecd mean(2);
    mean << d, 0.3 * d;
    const GaussianStated coh(mean, Matd::Identity(2, 2));
    EXPECT_NEAR(gaussian_fidelity(GaussianStated::vacuum(1), coh), std::exp(-mean.squaredNorm() / 4), 1e-10);
  }
  double previous = 1.0;
  for (double n = 0.05; n < 5.0; n += 0.25) {
    const double f = gaussian_fidelity(GaussianStated::thermal(n), GaussianStated::vacuum(1));
    EXPECT_NEAR(f, oracle::thermal_fidelity(n, 0.0), 1e-9);
    EXPECT_LT(f, previous);
    previous = f;
  }
  EXPECT_NEAR(gaussian_fidelity(GaussianStated::thermal(0.4), GaussianStated::thermal(1.3)),
              oracle::thermal_fidelity(0.4, 1.3), 1e-10);
}

TEST(Fidelity, SymmetryAndBeamsplitterInvariance) {
  const auto a = stellar_state(0.6, 0.7, 0.3);
  const auto b = pure_loss(stellar_state(1.1, 0.2, 2.0), 1, 0.5);
  EXPECT_NEAR(gaussian_fidelity(a, b), gaussian_fidelity(b, a), 1e-10);
  const double f = gaussian_fidelity(a, b);
  EXPECT_NEAR(gaussian_fidelity(beamsplitter(a, 0, 1, 0.3), beamsplitter(b, 0, 1, 0.3)), f, 1e-10);
  EXPECT_THROW(gaussian_fidelity(a, GaussianStated::vacuum(1)), std::invalid_argument);
  const GaussianStated bad(Vecd::Zero(4), 0.5 * Matd::Identity(4, 4));
  EXPECT_THROW(gaussian_fidelity(a, bad), std::invalid_argument);
}

TEST(FidelityLimit, StellarPhaseAtCoherentPoint) {
  const double j = qfi_fidelity_limit(stellar_family(0.3), stellar_theta(0.5, 0.6), kPhiIndex);
  EXPECT_LT(rel(j, oracle::source_j_phi(0.3, 0.6)), 1e-4);
}

TEST(FidelityLimit, RandomOracleEquivalence) {
  oracle::Draw draw(77);
  for (int k = 0; k < 40; ++k) {
    const double e = draw.uniform(0.05, 2), g = draw.uniform(0.05, 0.95), phi = draw.uniform(0, 2 * std::numbers::pi);
    const auto fam = stellar_family(e);
    const auto j = qfi_matrix(fam, stellar_theta(phi, g));
    EXPECT_LT(rel(qfi_fidelity_limit(fam, stellar_theta(phi, g), kPhiIndex), j(0, 0)), 5e-4);
    EXPECT_LT(rel(qfi_fidelity_limit(fam, stellar_theta(phi, g), kGammaIndex), j(1, 1)), 5e-4);
  }
}

TEST(FidelityLimit, ConditionalStateMatchesLinearOutcomeForm) {
  const double e = 0.4, g = 0.7;
  const StellarParams p(e, g);
  const LinkParams link(0.6, Squeezing::finite(0.0));
  for (double mq : {0.0, 0.8, -2.0}) {
    const HomodyneOutcomed m(mq, 1.3);
    const auto jf = teleport_outcome_qfi_fidelity(p, link, m);
    EXPECT_LT(rel(jf.first, oracle::het_outcome_j_phi(e, g, m.squared_norm())), 1e-4);
  }
}
