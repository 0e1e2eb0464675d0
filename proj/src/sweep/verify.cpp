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


#include "sqfi/sweep/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "sqfi/gaussian/operations.hpp"
#include "sqfi/qfi/moment_qfi.hpp"
#include "sqfi/stellar/quadrature.hpp"
#include "sqfi/stellar/states.hpp"
#include "sqfi/stellar/strategies.hpp"
#include "sqfi/sweep/sweep.hpp"

namespace sqfi {

namespace {

const std::vector<double> kGammas{0.5, 0.95};
const std::vector<double> kEtas{0.2, 0.4, 0.6, 0.8, 1.0};
const std::vector<double> kRs{0.25, 0.5, 1.0, 1.5, 2.0};
const std::vector<double> kEpsilons{0.05, 0.3, 1.0};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

CheckResult at_most(std::string name, double measured, double tol, std::string detail = {}) {
  return {std::move(name), measured <= tol, measured, tol, "<=", std::move(detail)};
}

CheckResult at_least(std::string name, double measured, double tol, std::string detail = {}) {
  return {std::move(name), measured >= tol, measured, tol, ">=", std::move(detail)};
}

CheckResult stellar_closed_forms() {
  double worst = 0.0;
  double cross = 0.0;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const double e = 0.05 + (2.0 - 0.05) * i / 4.0;
      const double g = 0.05 + (0.95 - 0.05) * j / 4.0;
      const auto f = qfi_matrix(stellar_family(e), stellar_theta(0.7, g));
      const auto di = di_qfi(StellarParams(e, g), 1.0);
      worst = std::max({worst, rel(f(0, 0), di.j_phi()), rel(f(1, 1), di.j_gamma())});
      cross = std::max(cross, std::abs(f(0, 1)));
    }
  }
  std::ostringstream d;
  d << "max |J_phi_gamma| = " << cross;
  auto c = at_most("stellar qfi_matrix vs closed forms (5x5 grid)", worst, 1e-8, d.str());
  c.passed = c.passed && cross < 1e-10;
  return c;
}

CheckResult derivative_paths() {
  double worst = 0.0;
  for (double e : {0.05, 0.5, 2.0}) {
    for (double g : {0.05, 0.5, 0.95}) {
      const auto th = stellar_theta(1.1, g);
      const auto a = qfi_matrix(stellar_family(e, true), th);
      const auto n = qfi_matrix(stellar_family(e, false), th);
      for (int k = 0; k < 2; ++k) worst = std::max(worst, rel(n(k, k), a(k, k)));
    }
  }
  return at_most("analytic vs central-difference derivatives", worst, 1e-8);
}

std::vector<CheckResult> limits() {
  std::vector<CheckResult> out;
  double worst = 0.0;
  for (double e : kEpsilons) {
    for (double g : kGammas) {
      const StellarParams p(e, g);
      const auto t = teleport_qfi_closed(p, LinkParams(0.6, Squeezing::finite(0.0)));
      const auto l = local_heterodyne_fi(p);
      worst = std::max({worst, rel(t.j_phi(), l.j_phi()), rel(t.j_gamma(), l.j_gamma())});
    }
  }
  out.push_back(at_most("teleport closed form at r = 0 equals local heterodyne", worst, 1e-12));

  worst = 0.0;
  for (double e : kEpsilons) {
    for (double g : kGammas) {
      const StellarParams p(e, g);
      const auto t = teleport_qfi_closed(p, LinkParams(1.0, Squeezing::finite(20.0)));
      const auto d = di_qfi(p, 1.0);
      worst = std::max({worst, rel(t.j_phi(), d.j_phi()), rel(t.j_gamma(), d.j_gamma())});
    }
  }
  out.push_back(at_most("teleport closed form at r = 20, eta = 1 vs direct", worst, 1e-5));

  worst = 0.0;
  for (double e : kEpsilons) {
    for (double g : kGammas) {
      const StellarParams p(e, g);
      const auto t = teleport_qfi_infinite_squeezing(p, 1.0);
      const auto d = di_qfi(p, 1.0);
      worst = std::max({worst, rel(t.j_phi(), d.j_phi()), rel(t.j_gamma(), d.j_gamma())});
    }
  }
  out.push_back(at_most("infinite squeezing at eta = 1 vs direct", worst, 1e-10));

  worst = 0.0;
  for (double e : kEpsilons) {
    for (double g : kGammas) {
      const StellarParams p(e, g);
      const auto l = local_heterodyne_fi(p);
      for (double r : kRs) {
        const auto t = teleport_qfi_closed(p, LinkParams(1e-8, Squeezing::finite(r)));
        worst = std::max({worst, rel(t.j_phi(), l.j_phi()), rel(t.j_gamma(), l.j_gamma())});
      }
    }
  }
  out.push_back(at_most("teleport closed form at eta = 1e-8 vs local heterodyne", worst, 1e-6));
  return out;
}

std::vector<CheckResult> crossovers() {
  std::vector<CheckResult> out;
  CrossoverQuery q;
  q.epsilon = 0.3;
  q.gamma = 1.0;
  q.squeezing = Squeezing::infinite();
  auto in_window = [&out](std::string name, double x, double lo, double hi) {
    std::ostringstream d;
    d << "window [" << lo << ", " << hi << "]";
    const double dist = std::max({0.0, lo - x, x - hi});
    CheckResult c{std::move(name), dist == 0.0, x, hi, "in", d.str()};
    out.push_back(c);
  };
  q.first = Strategy::kTeleport;
  q.second = Strategy::kDirect;
  in_window("crossover teleport / di (eps 0.3, gamma 1, r inf)", find_crossover(q), 0.22, 0.24);
  q.second = Strategy::kLocalHeterodyne;
  in_window("crossover teleport / local_het (eps 0.3, gamma 1, r inf)", find_crossover(q), 0.10, 0.12);
  q.first = Strategy::kDirect;
  in_window("crossover di / local_het (eps 0.3, gamma 1)", find_crossover(q), 0.6 / 2.9 - 1e-5, 0.6 / 2.9 + 1e-5);

  // Bracket independence.
  q.first = Strategy::kTeleport;
  q.second = Strategy::kDirect;
  const double a = find_crossover(q);
  q.eta_lo = 0.15;
  q.eta_hi = 0.5;
  const double b = find_crossover(q);
  out.push_back(at_most("crossover independent of bracket", std::abs(a - b), 2e-6));
  return out;
}

CheckResult squeezing_claim() {
  double worst = 1.0;
  for (double e : {1e-3, 1e-2, 1e-1, 1.0}) {
    const LinkParams link(1.0, Squeezing::finite(2.0));
    const StellarParams coherent(e, 1.0);
    worst = std::min(worst, teleport_qfi_closed(coherent, link).j_phi() / di_qfi(coherent, 1.0).j_phi());
    const StellarParams partial(e, 0.95);
    worst = std::min(worst, teleport_qfi_closed(partial, link).j_gamma() / di_qfi(partial, 1.0).j_gamma());
  }
  return at_least("teleport at r = 2, eta = 1 reaches fraction of direct", worst, 0.93);
}

CheckResult ordering() {
  double worst = 1.0;
  const StellarParams p(0.3, 1.0);
  const double local = local_heterodyne_fi(p).j_phi();
  for (int i = 0; i <= 15; ++i) {
    const double eta = 0.25 + 0.75 * i / 15.0;
    const double di = di_qfi(p, eta).j_phi();
    for (double r : {0.0, 0.25, 0.5, 1.0, 2.0, 3.0, 5.0, 10.0}) {
      const double t = teleport_qfi_closed(p, LinkParams(eta, Squeezing::finite(r))).j_phi();
      worst = std::min({worst, 1.0 + (di - t) / di, 1.0 + (t - local) / local});
    }
  }
  return at_least("ordering di >= teleport >= local_het (eta in [0.25, 1])", worst, 1.0 - 1e-12,
                  "measured is 1 + smallest normalized margin");
}

CheckResult pipeline_equivalence(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double e = 0.05 + 1.95 * u01(rng);
    const double g = 0.05 + 0.9 * u01(rng);
    const double phi = 2.0 * std::numbers::pi * u01(rng);
    const double eta = u01(rng);
    const double r = 2.0 * u01(rng);
    const auto link = link_moments(eta, r);
    std::normal_distribution<double> normal(0.0, std::sqrt((1.0 + link.c + e) / 2.0));
    const HomodyneOutcomed m(normal(rng), normal(rng));
    const auto a = teleport_conditional(e, g, phi, eta, r, m);
    const auto b = teleport_conditional_pipeline(e, g, phi, eta, r, m);
    const double scale = std::max(1.0, max_abs(b.state.cov()));
    worst = std::max({worst, max_abs(Matd(a.state.cov() - b.state.cov())) / scale,
                      (a.state.mean() - b.state.mean()).cwiseAbs().maxCoeff() / scale,
                      std::abs(a.density - b.density) / b.density});
  }
  return at_most("closed-form conditional moments vs generic conditioning (100 draws)", worst, 1e-12);
}

std::vector<CheckResult> monte_carlo(const VerifyOptions& options) {
  const StellarParams p(0.3, 0.5);
  const LinkParams link(0.7, Squeezing::finite(1.0));
  OutcomeSampler sampler(p, link, options.seed);
  double sum_j = 0.0, sum_j2 = 0.0, sum_m = 0.0, sum_m2 = 0.0;
  const int n = options.mc_samples;
  for (int i = 0; i < n; ++i) {
    const HomodyneOutcomed m = sampler.next();
    const double j = teleport_outcome_qfi(p, link, m)(kPhiIndex, kPhiIndex);
    sum_j += j;
    sum_j2 += j * j;
    sum_m += m.squared_norm();
    sum_m2 += m.squared_norm() * m.squared_norm();
  }
  auto z_score = [n](double s, double s2, double target) {
    const double mean = s / n;
    const double var = (s2 - n * mean * mean) / (n - 1);
    return std::abs(mean - target) / std::sqrt(var / n);
  };
  std::ostringstream d;
  d << n << " samples, seed " << options.seed;
  return {at_most("Monte-Carlo per-outcome J_phi vs closed form (standard errors)",
                  z_score(sum_j, sum_j2, teleport_qfi_closed(p, link).j_phi()), 3.0, d.str()),
          at_most("Monte-Carlo <m.m> vs 1 + c + eps (standard errors)",
                  z_score(sum_m, sum_m2, 1.0 + link.c() + p.epsilon), 3.0, d.str())};
}

std::vector<CheckResult> physicality(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, 4);
  double worst = std::numeric_limits<double>::infinity();
  for (int chain = 0; chain < 1000; ++chain) {
    const int modes = 2 + chain % 3;
    auto s = GaussianStated::thermal(2.0 * u01(rng));
    for (int k = 1; k < modes; ++k) s = tensor(s, GaussianStated::thermal(2.0 * u01(rng)));
    std::uniform_int_distribution<int> mode(0, modes - 1);
    const int length = 1 + chain % 10;
    for (int step = 0; step < length; ++step) {
      const int i = mode(rng);
      int j = mode(rng);
      if (j == i) j = (i + 1) % modes;
      switch (pick(rng)) {
        case 0:
          s = beamsplitter(s, i, j, u01(rng));
          break;
        case 1:
          s = phase_shift(s, i, 2.0 * std::numbers::pi * u01(rng));
          break;
        case 2:
          s = two_mode_squeeze(s, i, j, u01(rng));
          break;
        case 3:
          s = pure_loss(s, i, u01(rng));
          break;
        default:
          s = tensor(partial_trace(s, {i}), GaussianStated::vacuum(modes - 1));
          break;
      }
    }
    const double scale = std::max(1.0, max_abs(s.cov()));
    worst = std::min(worst, min_uncertainty_eigenvalue(s) / scale);
  }

  double semigroup = 0.0;
  for (int k = 0; k < 100; ++k) {
    auto s = two_mode_squeeze(tensor(GaussianStated::thermal(u01(rng)), GaussianStated::thermal(u01(rng))), 0, 1,
                              u01(rng));
    const double a = u01(rng);
    const double b = u01(rng);
    const auto twice = pure_loss(pure_loss(s, 0, a), 0, b);
    const auto once = pure_loss(s, 0, a * b);
    semigroup = std::max(semigroup, max_abs(Matd(twice.cov() - once.cov())));
  }
  return {at_least("1000 random channel chains keep cov + i Omega >= -1e-9", worst, -1e-9),
          at_most("pure-loss semigroup eta_a eta_b", semigroup, 1e-12)};
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<ThreeWayRow> three_way_table(const std::vector<double>& gammas, const std::vector<double>& etas,
                                         const std::vector<double>& rs, const std::vector<double>& epsilons) {
  const GaussHermiteRule rule = gauss_hermite(8);
  std::vector<ThreeWayRow> rows;
  for (double g : gammas) {
    for (double e : epsilons) {
      for (double eta : etas) {
        for (double r : rs) {
          const StellarParams p(e, g);
          const LinkParams link(eta, Squeezing::finite(r));
          const auto closed = teleport_qfi_closed(p, link);
          const auto quad = teleport_qfi_ensemble(p, link, 8);
          const double scale = std::sqrt(1.0 + link.c() + e);
          double fp = 0.0, fg = 0.0;
          for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
              const double w = rule.weights[i] * rule.weights[j] / std::numbers::pi;
              const auto f = teleport_outcome_qfi_fidelity(
                  p, link, HomodyneOutcomed(scale * rule.nodes[i], scale * rule.nodes[j]));
              fp += w * f.first;
              fg += w * f.second;
            }
          }
          ThreeWayRow row{g, e, eta, r, closed.j_phi(), quad.j_phi(), fp, closed.j_gamma(), quad.j_gamma(), fg, 0};
          row.max_relative = std::max({rel(quad.j_phi(), closed.j_phi()), rel(fp, closed.j_phi()),
                                       rel(fp, quad.j_phi()), rel(quad.j_gamma(), closed.j_gamma()),
                                       rel(fg, closed.j_gamma()), rel(fg, quad.j_gamma())});
          rows.push_back(row);
        }
      }
    }
  }
  return rows;
}

double closed_vs_quadrature_deviation(long double y_scale) {
  double worst = 0.0;
  for (double g : kGammas) {
    for (double e : kEpsilons) {
      for (double eta : kEtas) {
        for (double r : kRs) {
          const StellarParams p(e, g);
          const LinkParams link(eta, Squeezing::finite(r));
          const auto closed = detail::teleport_qfi_closed_scaled(p, link, y_scale);
          const auto quad = teleport_qfi_ensemble(p, link, 8);
          worst = std::max({worst, rel(closed.j_phi(), quad.j_phi()), rel(closed.j_gamma(), quad.j_gamma())});
        }
      }
    }
  }
  return worst;
}

VerifyReport run_verify(const VerifyOptions& options) {
  VerifyReport report;
  std::mt19937_64 rng(options.seed);
  auto add = [&report](std::vector<CheckResult> cs) {
    for (auto& c : cs) report.checks.push_back(std::move(c));
  };

  report.checks.push_back(stellar_closed_forms());
  report.checks.push_back(derivative_paths());
  add(limits());
  add(crossovers());
  report.checks.push_back(squeezing_claim());
  report.checks.push_back(ordering());
  report.checks.push_back(pipeline_equivalence(rng));
  add(physicality(rng));

  report.checks.push_back(at_most("closed form vs quadrature ensemble (5x5x3 grid, 2 gammas)",
                                  closed_vs_quadrature_deviation(1.0L), 1e-6));
  const double mutated = closed_vs_quadrature_deviation(1.0L + 1e-3L);
  report.checks.push_back({"mutation: Y scaled by 1 + 1e-3 is caught by the quadrature check", mutated > 1e-6,
                           mutated, 1e-6, ">", "the perturbed closed form must disagree"});

  report.three_way = three_way_table(kGammas, kEtas, kRs, kEpsilons);
  double worst = 0.0;
  for (const auto& row : report.three_way) worst = std::max(worst, row.max_relative);
  report.checks.push_back(at_most("three-way oracle agreement (closed / quadrature / fidelity)", worst, 5e-4));

  add(monte_carlo(options));
  return report;
}

void print_report(std::ostream& out, const VerifyReport& report) {
  out << std::setprecision(3);
  for (const auto& c : report.checks) {
    out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": measured " << std::scientific << c.measured << ' '
        << c.relation << ' ' << c.tolerance << std::defaultfloat;
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << '\n';
  }
  if (!report.three_way.empty()) {
    out << "\nthree-way oracle table (absolute QFI, not per photon)\n";
    out << std::setw(6) << "gamma" << std::setw(7) << "eps" << std::setw(6) << "eta" << std::setw(6) << "r"
        << std::setw(12) << "J_phi" << std::setw(12) << "J_gamma" << std::setw(11) << "max_rel" << '\n';
    for (const auto& row : report.three_way) {
      out << std::fixed << std::setprecision(2) << std::setw(6) << row.gamma << std::setw(7) << row.epsilon
          << std::setw(6) << row.eta << std::setw(6) << row.r << std::scientific << std::setprecision(4)
          << std::setw(12) << row.closed_phi << std::setw(12) << row.closed_gamma << std::setprecision(2)
          << std::setw(11) << row.max_relative << std::defaultfloat << '\n';
    }
  }
  const auto failed = std::count_if(report.checks.begin(), report.checks.end(), [](const auto& c) { return !c.passed; });
  out << '\n' << report.checks.size() - failed << '/' << report.checks.size() << " checks passed\n";
}

}  // namespace sqfi
