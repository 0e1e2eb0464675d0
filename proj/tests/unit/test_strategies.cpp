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
#include <set>

#include "oracles/oracles.hpp"
#include "sqfi/errors.hpp"
#include "sqfi/qfi/moment_qfi.hpp"
#include "sqfi/stellar/params.hpp"
#include "sqfi/stellar/states.hpp"
#include "sqfi/stellar/strategies.hpp"

using namespace sqfi;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

LinkParams link(double eta, double r) { return LinkParams(eta, Squeezing::finite(r)); }

}  // namespace

TEST(Params, Validation) {
  EXPECT_THROW(StellarParams(0.0, 0.5), DomainError);
  EXPECT_THROW(StellarParams(-1.0, 0.5), DomainError);
  EXPECT_THROW(StellarParams(INFINITY, 0.5), DomainError);
  EXPECT_THROW(StellarParams(1.0, 1.01), DomainError);
  EXPECT_THROW(StellarParams(1.0, -0.01), DomainError);
  EXPECT_THROW(StellarParams(1.0, 0.5, NAN), DomainError);
  EXPECT_NEAR(StellarParams(1.0, 0.5, -std::numbers::pi / 2).phi, 1.5 * std::numbers::pi, 1e-15);
  EXPECT_THROW(LinkParams(1.1, Squeezing::infinite()), DomainError);
  EXPECT_THROW(Squeezing::finite(-0.1), DomainError);
  EXPECT_THROW(Squeezing::finite(400.0), DomainError);
  EXPECT_THROW(Squeezing::infinite().r(), DomainError);
  EXPECT_EQ(Squeezing::infinite().to_string(), "inf");
}

TEST(Params, LinkInvariants) {
  for (double eta : {0.0, 0.4, 1.0}) {
    for (double r : {0.0, 0.3, 1.5, 3.0}) {
      const auto l = link(eta, r);
      EXPECT_GE(l.c(), 1.0);
      EXPECT_GE(l.s(), 0.0);
      const long double c = l.c_long(), s = l.s_long();
      EXPECT_NEAR(static_cast<double>(l.c2_minus_s2() / ((c - s) * (c + s))), 1.0, 1e-12);
      if (eta == 1.0) {
        EXPECT_EQ(l.c2_minus_s2(), 1.0L);
      }
    }
  }
}

TEST(StellarState, Examples) {
  const auto s = stellar_state(0.3, 1.0, 0.0);
  EXPECT_DOUBLE_EQ(s.cov()(0, 2), 0.3);
  EXPECT_DOUBLE_EQ(s.cov()(1, 3), 0.3);
  EXPECT_EQ(stellar_state(0.5, 0.0, 1.0).cov(), Matd(1.5 * Matd::Identity(4, 4)));
  const auto q = stellar_state(0.3, 1.0, std::numbers::pi / 2);
  EXPECT_NEAR(q.cov()(0, 3), -0.3, 1e-16);
  EXPECT_NEAR(q.cov()(1, 2), 0.3, 1e-16);
  Eigen::SelfAdjointEigenSolver<Matd> eig(stellar_state(0.9, 0.35, 2.2).cov());
  EXPECT_NEAR(eig.eigenvalues()(0), 1 + 0.9 * 0.65, 1e-13);
  EXPECT_NEAR(eig.eigenvalues()(3), 1 + 0.9 * 1.35, 1e-13);
}

TEST(Direct, Examples) {
  for (double eta : {0.1, 0.5, 1.0}) {
    EXPECT_EQ(di_qfi(StellarParams(0.3, 1.0), eta).j_phi() / 0.3, eta);
  }
  EXPECT_NEAR(di_qfi(StellarParams(0.3, 1.0), 0.5).j_phi(), 0.15, 1e-15);
  const auto d = di_qfi(StellarParams(0.7, 0.6), 1.0);
  EXPECT_LT(rel(d.j_phi(), oracle::source_j_phi(0.7, 0.6)), 1e-14);
  EXPECT_LT(rel(d.j_gamma(), oracle::source_j_gamma(0.7, 0.6)), 1e-14);
  EXPECT_EQ(d.j_cross(), 0.0);
  const auto lossy = di_qfi(StellarParams(0.7, 0.6), 0.3);
  EXPECT_LT(rel(lossy.j_gamma(), oracle::source_j_gamma(0.21, 0.6)), 1e-14);
  EXPECT_THROW(di_qfi(StellarParams(0.3, 1.0), 0.0), DomainError);
  EXPECT_FALSE(di_qfi(StellarParams(0.3, 1.0), 1.0).has_j_gamma());
  EXPECT_THROW(di_qfi(StellarParams(0.3, 1.0), 1.0).j_gamma(), DomainError);
}

TEST(Direct, GammaDivergence) {
  const double e = 0.5;
  const auto j = [&](double g) { return di_qfi(StellarParams(e, g), 1.0).j_gamma(); };
  const double j90 = j(0.9), j99 = j(0.99), j999 = j(0.999);
  EXPECT_GT(j99, 5 * j90);
  EXPECT_GT(j999, 5 * j99);
  // (1 - gamma^2) J_gamma tends to a finite constant.
  const auto limit = [&](double g) { return (1 - g * g) * j(g); };
  EXPECT_NEAR(limit(0.999) / limit(0.99), 1.0, 0.02);
  EXPECT_NEAR(limit(0.999), 2 * e * (2 + 2 * e) / (4 + 4 * e), 0.01);
}

TEST(LocalHeterodyne, Examples) {
  EXPECT_NEAR(local_heterodyne_fi(StellarParams(0.3, 1.0)).j_phi() / 0.3, 0.18 / (2.9 * 0.3), 1e-15);
  EXPECT_NEAR(local_heterodyne_fi(StellarParams(0.3, 1.0)).j_phi() / 0.3, 0.2069, 1e-4);
  EXPECT_EQ(local_heterodyne_fi(StellarParams(0.3, 0.0)).j_phi(), 0.0);
  const auto h = local_heterodyne_fi(StellarParams(0.8, 0.7));
  EXPECT_LT(rel(h.j_phi(), oracle::het_j_phi(0.8, 0.7)), 1e-14);
  EXPECT_LT(rel(h.j_gamma(), oracle::het_j_gamma(0.8, 0.7)), 1e-13);
  EXPECT_FALSE(local_heterodyne_fi(StellarParams(0.3, 1.0)).has_j_gamma());
}

TEST(LocalHeterodyne, WeakFieldSlopeIsTwo) {
  for (double g : {0.3, 1.0}) {
    const double lo = local_heterodyne_fi(StellarParams(1e-4, g)).j_phi();
    const double hi = local_heterodyne_fi(StellarParams(1e-2, g)).j_phi();
    EXPECT_NEAR(std::log(hi / lo) / std::log(1e-2 / 1e-4), 2.0, 0.01);
  }
}

TEST(Teleport, ClosedFormMatchesVerbatimExpression) {
  // The verbatim J_gamma is 0/0 at s = 0; that edge is covered by the
  // local-heterodyne identity below.
  for (double e : {0.01, 0.3, 2.0}) {
    for (double g : {0.2, 0.7, 0.95}) {
      for (double eta : {0.05, 0.3, 0.8, 1.0}) {
        for (double r : {0.1, 0.4, 1.5, 3.0}) {
          const auto t = teleport_qfi_closed(StellarParams(e, g), link(eta, r));
          const auto v = oracle::teleport_verbatim(e, g, eta, r);
          EXPECT_LT(rel(t.j_phi(), static_cast<double>(v.first)), 1e-9) << e << " " << g << " " << eta << " " << r;
          EXPECT_LT(rel(t.j_gamma(), static_cast<double>(v.second)), 1e-9) << e << " " << g << " " << eta << " " << r;
        }
      }
    }
  }
}

TEST(Teleport, ZeroSqueezingIsLocalHeterodyne) {
  for (double e : {0.05, 0.5, 3.0}) {
    for (double g : {0.0, 0.4, 0.95}) {
      for (double eta : {0.0, 0.5, 1.0}) {
        const auto t = teleport_qfi_closed(StellarParams(e, g), link(eta, 0.0));
        const auto h = local_heterodyne_fi(StellarParams(e, g));
        EXPECT_NEAR(t.j_phi(), h.j_phi(), 1e-12 * std::max(1.0, h.j_phi()));
        EXPECT_NEAR(t.j_gamma(), h.j_gamma(), 1e-12 * std::max(1.0, h.j_gamma()));
      }
    }
  }
}

TEST(Teleport, PerfectLinkLimits) {
  for (double e : {0.001, 0.3, 1.0}) {
    const StellarParams p(e, 0.9);
    const auto d = di_qfi(p, 1.0);
    const auto t = teleport_qfi_closed(p, link(1.0, 20.0));
    EXPECT_LT(rel(t.j_phi(), d.j_phi()), 1e-6);
    EXPECT_LT(rel(t.j_gamma(), d.j_gamma()), 1e-6);
    const auto inf = teleport_qfi_infinite_squeezing(p, 1.0);
    EXPECT_LT(rel(inf.j_phi(), d.j_phi()), 1e-10);
    EXPECT_LT(rel(inf.j_gamma(), d.j_gamma()), 1e-10);
  }
}

TEST(Teleport, InfiniteSqueezingMatchesLargeFiniteR) {
  for (double eta : {0.2, 0.6, 0.95}) {
    for (double g : {0.5, 0.95, 1.0}) {
      const StellarParams p(0.3, g);
      const auto inf = teleport_qfi_infinite_squeezing(p, eta);
      const auto fin = teleport_qfi_closed(p, link(eta, 20.0));
      EXPECT_LT(rel(fin.j_phi(), inf.j_phi()), 1e-5);
      if (g < 1.0) {
        EXPECT_LT(rel(fin.j_gamma(), inf.j_gamma()), 1e-5);
      }
    }
  }
  EXPECT_THROW(teleport_qfi_infinite_squeezing(StellarParams(0.3, 1.0), 0.0), DomainError);
}

TEST(Teleport, LossLimitApproachesLocalHeterodyne) {
  for (double r : {0.5, 2.0}) {
    const StellarParams p(0.3, 0.95);
    const auto t = teleport_qfi_closed(p, link(1e-8, r));
    const auto h = local_heterodyne_fi(p);
    EXPECT_LT(rel(t.j_phi(), h.j_phi()), 1e-6);
    EXPECT_LT(rel(t.j_gamma(), h.j_gamma()), 1e-6);
  }
}

TEST(Teleport, EnsembleMatchesClosedForm) {
  for (double eta : {0.1, 0.5, 0.9, 1.0}) {
    for (double r : {0.0, 0.3, 1.0, 1.8}) {
      for (double e : {0.05, 0.5, 1.5}) {
        const StellarParams p(e, 0.7, 1.0);
        const auto c = teleport_qfi_closed(p, link(eta, r));
        const auto q = teleport_qfi_ensemble(p, link(eta, r));
        EXPECT_LT(rel(q.j_phi(), c.j_phi()), 1e-6);
        EXPECT_LT(rel(q.j_gamma(), c.j_gamma()), 1e-6);
        EXPECT_LT(std::abs(q.j_cross()), 1e-10);
      }
    }
  }
  const StellarParams p(0.3, 0.5);
  const auto pipe = teleport_qfi_ensemble(p, link(0.7, 0.8), 8, ConditioningRoute::kPipeline);
  EXPECT_LT(rel(pipe.j_phi(), teleport_qfi_closed(p, link(0.7, 0.8)).j_phi()), 1e-6);
  EXPECT_THROW(teleport_qfi_ensemble(p, link(0.7, 0.8), 4), std::invalid_argument);
}

TEST(Teleport, PerOutcomeQfiAtZeroSqueezingIsLinearInOutcomeNorm) {
  const double e = 0.6, g = 0.8;
  const StellarParams p(e, g, 0.4);
  for (double mq : {0.0, 0.5, 2.0}) {
    for (double mp : {-1.0, 0.3}) {
      const HomodyneOutcomed m(mq, mp);
      const auto j = teleport_outcome_qfi(p, link(0.5, 0.0), m);
      EXPECT_LT(rel(j(0, 0), oracle::het_outcome_j_phi(e, g, m.squared_norm())), 1e-7);
    }
  }
}

TEST(Teleport, OutcomeDensityCarriesNoInformation) {
  // Classical Fisher information of p(m) in phi by finite differences.
  const double e = 0.5, g = 0.6, eta = 0.7, r = 0.9, h = 1e-4;
  const auto input = [&](double phi) { return teleport_input_state(e, g, phi, eta, r); };
  for (double mq : {0.0, 1.0, -2.5}) {
    const HomodyneOutcomed m(mq, 0.7);
    const double p_hi = condition_double_homodyne(input(1.0 + h), 1, 3, m).density;
    const double p_lo = condition_double_homodyne(input(1.0 - h), 1, 3, m).density;
    const double p0 = condition_double_homodyne(input(1.0), 1, 3, m).density;
    const double dlogp = (p_hi - p_lo) / (2 * h * p0);
    EXPECT_LT(std::abs(dlogp), 1e-10);
  }
}

TEST(Teleport, PhaseIndependence) {
  for (Strategy s : {Strategy::kDirect, Strategy::kLocalHeterodyne, Strategy::kTeleport}) {
    const auto ref = evaluate_strategy(s, StellarParams(0.4, 0.8, 0.0), link(0.6, 1.1));
    for (double phi : {std::numbers::pi / 4, std::numbers::pi / 2, std::numbers::pi}) {
      const auto v = evaluate_strategy(s, StellarParams(0.4, 0.8, phi), link(0.6, 1.1));
      EXPECT_NEAR(v.j_phi(), ref.j_phi(), 1e-12);
      EXPECT_NEAR(v.j_gamma(), ref.j_gamma(), 1e-12);
    }
  }
  const auto q0 = teleport_qfi_ensemble(StellarParams(0.4, 0.8, 0.0), link(0.6, 1.1));
  const auto q1 = teleport_qfi_ensemble(StellarParams(0.4, 0.8, 2.0), link(0.6, 1.1));
  EXPECT_LT(rel(q1.j_phi(), q0.j_phi()), 1e-9);
}

TEST(Teleport, MonotoneInSqueezingWhenLossless) {
  for (double e : {0.001, 0.1, 1.0}) {
    double previous = 0.0;
    for (double r = 0.0; r <= 4.0; r += 0.05) {
      const double j = teleport_qfi_closed(StellarParams(e, 1.0), link(1.0, r)).j_phi();
      EXPECT_GE(j, previous - 1e-15);
      previous = j;
    }
  }
}

TEST(Teleport, OrderingAgainstDirectAndHeterodyne) {
  const StellarParams p(0.3, 1.0);
  for (int k = 0; k <= 30; ++k) {
    const double eta = 0.25 + 0.025 * k;
    const double di = di_qfi(p, eta).j_phi();
    const double het = local_heterodyne_fi(p).j_phi();
    for (double r : {0.0, 0.5, 1.0, 2.0, 4.0}) {
      const double tel = teleport_qfi_closed(p, link(eta, r)).j_phi();
      EXPECT_GE(di + 1e-12, tel);
      EXPECT_GE(tel + 1e-12, het);
    }
  }
}

TEST(Teleport, SqueezingOfTwoReachesNinetyFivePercent) {
  for (double e : {1e-3, 1e-2, 1e-1, 1.0}) {
    const double ratio_phi = teleport_qfi_closed(StellarParams(e, 1.0), link(1.0, 2.0)).j_phi() /
                             di_qfi(StellarParams(e, 1.0), 1.0).j_phi();
    const double ratio_gamma = teleport_qfi_closed(StellarParams(e, 0.95), link(1.0, 2.0)).j_gamma() /
                               di_qfi(StellarParams(e, 0.95), 1.0).j_gamma();
    EXPECT_GE(ratio_phi, 0.95);
    EXPECT_GE(ratio_gamma, 0.95);
  }
}

TEST(Teleport, CrossTermVanishes) {
  oracle::Draw draw(31);
  for (int k = 0; k < 30; ++k) {
    const StellarParams p(draw.uniform(0.05, 2), draw.uniform(0.05, 0.95), draw.uniform(0, 6.28));
    const HomodyneOutcomed m(draw.normal(1.0), draw.normal(1.0));
    EXPECT_LT(std::abs(teleport_outcome_qfi(p, link(draw.uniform(0, 1), draw.uniform(0, 2)), m)(0, 1)), 1e-6);
  }
}

TEST(Conditional, ClosedFormMatchesPipeline) {
  oracle::Draw draw(17);
  for (int k = 0; k < 100; ++k) {
    const double e = draw.uniform(0.05, 2), g = draw.uniform(0, 1), phi = draw.uniform(0, 6.28);
    const double eta = draw.uniform(0, 1), r = draw.uniform(0, 2);
    const HomodyneOutcomed m(draw.normal(2.0), draw.normal(2.0));
    const auto a = teleport_conditional(e, g, phi, eta, r, m);
    const auto b = teleport_conditional_pipeline(e, g, phi, eta, r, m);
    const double scale = std::max(1.0, max_abs(b.state.cov()));
    EXPECT_LT((a.state.cov() - b.state.cov()).cwiseAbs().maxCoeff(), 1e-12 * scale);
    EXPECT_LT((a.state.mean() - b.state.mean()).cwiseAbs().maxCoeff(), 1e-12 * scale);
    EXPECT_NEAR(a.density, b.density, 1e-12 * b.density);
  }
}

TEST(Conditional, MomentExamples) {
  const double e = 0.4, g = 0.9, phi = 0.7, eta = 0.8, r = 1.2;
  const auto l = link_moments(eta, r);
  const auto cm = teleport_conditional_moments(e, g, phi, l.c, l.s);
  const double d = 1 + l.c + e;
  EXPECT_NEAR(cm.mu * cm.mu + cm.nu * cm.nu, std::pow(g * l.s * e / d, 2), 1e-13);
  EXPECT_EQ(cm.mean(HomodyneOutcomed(0, 0)).norm(), 0.0);
  EXPECT_NEAR(cm.density_variance, d / 2, 1e-15);
  // At r = 0 mode C stays vacuum and uncorrelated, with zero mean.
  const auto z = teleport_conditional(e, g, phi, 0.5, 0.0, HomodyneOutcomed(1.0, -2.0));
  EXPECT_EQ(z.state.mean()(2), 0.0);
  EXPECT_EQ(z.state.mean()(3), 0.0);
  EXPECT_NEAR(z.state.cov()(2, 2), 1.0, 1e-15);
  EXPECT_EQ(z.state.cov()(0, 2), 0.0);
  EXPECT_NEAR(z.state.cov()(0, 0), e + 1 - g * g * e * e / (2 + e), 1e-14);
}

TEST(StrategyQfi, Validation) {
  EXPECT_THROW(StrategyQFI(Strategy::kDirect, NAN, 1.0), NumericalError);
  EXPECT_THROW(StrategyQFI(Strategy::kDirect, -1e-3, 1.0), NumericalError);
  EXPECT_THROW(StrategyQFI(Strategy::kDirect, 1.0, 1.0, 1e-3), NumericalError);
  EXPECT_NO_THROW(StrategyQFI(Strategy::kDirect, 1.0, std::nullopt, 1e-12));
  EXPECT_EQ(parse_strategy("local_het"), Strategy::kLocalHeterodyne);
  EXPECT_EQ(strategy_name(Strategy::kTeleport), "teleport");
  EXPECT_THROW(parse_strategy("nope"), std::invalid_argument);
}

TEST(Sampler, ReproducibleAndCorrectlyScaled) {
  const StellarParams p(0.4, 0.9);
  const auto l = link(0.8, 1.0);
  const auto a = sample_outcome(p, l, 123);
  const auto b = sample_outcome(p, l, 123);
  EXPECT_EQ(a.m_q, b.m_q);
  EXPECT_EQ(a.m_p, b.m_p);
  EXPECT_NE(sample_outcome(p, l, 124).m_q, a.m_q);

  OutcomeSampler sampler(p, l, 42);
  const int n = 1000000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double mm = sampler.next().squared_norm();
    sum += mm;
    sum2 += mm * mm;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum2 / n - mean * mean) / n);
  EXPECT_LT(std::abs(mean - (1 + l.c() + 0.4)), 5 * se);
}

TEST(Sampler, VacuumLinkVariance) {
  const double e = 0.7;
  OutcomeSampler sampler(StellarParams(e, 0.5), link(1.0, 0.0), 9);
  EXPECT_DOUBLE_EQ(sampler.component_variance(), (2 + e) / 2);
  const int n = 400000;
  double sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double q = sampler.next().m_q;
    sum2 += q * q;
  }
  const double var = (2 + e) / 2;
  EXPECT_LT(std::abs(sum2 / n - var), 5 * var * std::sqrt(2.0 / n));
}

TEST(Sampler, MonteCarloAverageMatchesClosedForm) {
  const StellarParams p(0.3, 0.95, std::numbers::pi / 4);
  const auto l = link(0.7, 1.0);
  OutcomeSampler sampler(p, l, 20260214);
  const int n = 20000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double j = teleport_outcome_qfi(p, l, sampler.next())(0, 0);
    sum += j;
    sum2 += j * j;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum2 / n - mean * mean) / n);
  EXPECT_LT(std::abs(mean - teleport_qfi_closed(p, l).j_phi()), 3 * se);
}
