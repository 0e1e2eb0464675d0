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


#include "sqfi/sweep/sweep.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sqfi/errors.hpp"

namespace sqfi {

namespace {

bool contains(const std::vector<Strategy>& v, Strategy s) { return std::find(v.begin(), v.end(), s) != v.end(); }

std::vector<SweepRow> evaluate_point(const SweepSpec& spec, double v) {
  double epsilon = spec.epsilon;
  double gamma = spec.gamma;
  double eta = spec.eta;
  std::vector<Squeezing> squeezings = spec.squeezings;
  switch (spec.axis) {
    case Axis::kEta:
      eta = v;
      break;
    case Axis::kR:
      squeezings = {Squeezing::finite(v)};
      break;
    case Axis::kGamma:
      gamma = v;
      break;
    case Axis::kEpsilon:
      epsilon = v;
      break;
  }
  const StellarParams p(epsilon, gamma, spec.phi);

  // Only eta-axis grid points at eta = 0 are skipped; a fixed eta = 0 still errors.
  const bool skip_vacuum = spec.axis == Axis::kEta && eta == 0.0;
  std::vector<SweepRow> rows;
  auto emit = [&](const StrategyQFI& q, std::optional<Squeezing> sq) {
    std::optional<double> jg;
    if (q.has_j_gamma()) jg = q.j_gamma() / epsilon;
    rows.push_back({spec.axis, v, q.strategy(), sq, eta, epsilon, gamma, q.j_phi() / epsilon, jg});
  };
  for (Strategy s : spec.strategies) {
    switch (s) {
      case Strategy::kDirect:
        if (!skip_vacuum) emit(di_qfi(p, eta), std::nullopt);
        break;
      case Strategy::kLocalHeterodyne:
        emit(local_heterodyne_fi(p), std::nullopt);
        break;
      case Strategy::kTeleport:
        for (const Squeezing& sq : squeezings) {
          if (sq.is_infinite() && skip_vacuum) continue;
          emit(teleport_qfi(p, LinkParams(eta, sq)), sq);
        }
        break;
    }
  }
  return rows;
}

std::string point_label(const SweepSpec& spec, double v) {
  std::ostringstream out;
  out.precision(17);
  out << "sweep point " << axis_name(spec.axis) << " = " << v << ": ";
  return out.str();
}

}  // namespace

std::string_view axis_name(Axis a) {
  switch (a) {
    case Axis::kEta:
      return "eta";
    case Axis::kR:
      return "r";
    case Axis::kGamma:
      return "gamma";
    case Axis::kEpsilon:
      return "epsilon";
  }
  throw std::invalid_argument("axis_name: unknown axis");
}

Axis parse_axis(std::string_view name) {
  if (name == "eta") return Axis::kEta;
  if (name == "r") return Axis::kR;
  if (name == "gamma") return Axis::kGamma;
  if (name == "epsilon") return Axis::kEpsilon;
  throw std::invalid_argument("unknown axis '" + std::string(name) + "' (expected eta, r, gamma or epsilon)");
}

std::string_view spacing_name(Spacing s) { return s == Spacing::kLinear ? "linear" : "log"; }

Spacing parse_spacing(std::string_view name) {
  if (name == "linear") return Spacing::kLinear;
  if (name == "log") return Spacing::kLog;
  throw std::invalid_argument("unknown spacing '" + std::string(name) + "' (expected linear or log)");
}

void AxisRange::validate() const {
  if (count < 2) throw std::invalid_argument("AxisRange: count must be at least 2");
  if (!(min < max) || !std::isfinite(min) || !std::isfinite(max)) {
    throw std::invalid_argument("AxisRange: need finite min < max");
  }
  if (spacing == Spacing::kLog && !(min > 0.0)) throw std::invalid_argument("AxisRange: log spacing needs min > 0");
}

std::vector<double> AxisRange::values() const {
  validate();
  std::vector<double> out(count);
  const double last = count - 1;
  for (int i = 0; i < count; ++i) {
    if (spacing == Spacing::kLinear) {
      out[i] = min + (max - min) * (i / last);
    } else {
      out[i] = std::exp(std::log(min) + (std::log(max) - std::log(min)) * (i / last));
    }
  }
  out.front() = min;
  out.back() = max;
  return out;
}

void SweepSpec::validate() const {
  range.validate();
  if (strategies.empty()) throw std::invalid_argument("SweepSpec: strategy set is empty");
  if (contains(strategies, Strategy::kTeleport) && axis != Axis::kR && squeezings.empty()) {
    throw std::invalid_argument("SweepSpec: teleport needs at least one squeezing value");
  }
  switch (axis) {
    case Axis::kEta:
      if (range.min < 0.0 || range.max > 1.0) throw DomainError("SweepSpec: eta axis must lie in [0, 1]");
      break;
    case Axis::kR:
      if (range.min < 0.0) throw DomainError("SweepSpec: r axis must be non-negative");
      break;
    case Axis::kGamma:
      if (range.min < 0.0 || range.max > 1.0) throw DomainError("SweepSpec: gamma axis must lie in [0, 1]");
      break;
    case Axis::kEpsilon:
      if (!(range.min > 0.0)) throw DomainError("SweepSpec: epsilon axis must be positive");
      break;
  }
  if (axis != Axis::kEta && !(eta >= 0.0 && eta <= 1.0)) throw DomainError("SweepSpec: eta outside [0, 1]");
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const std::vector<double> grid = spec.range.values();
  const std::size_t n = grid.size();
  std::vector<std::vector<SweepRow>> per_point(n);
  std::vector<std::exception_ptr> errors(n);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        per_point[i] = evaluate_point(spec, grid[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned threads = spec.threads != 0 ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  // Report the first failing point in grid order, whatever the thread timing.
  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const DomainError& e) {
      throw DomainError(point_label(spec, grid[i]) + e.what());
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(point_label(spec, grid[i]) + e.what());
    } catch (const std::exception& e) {
      throw std::runtime_error(point_label(spec, grid[i]) + e.what());
    }
  }

  std::vector<SweepRow> rows;
  for (auto& chunk : per_point) rows.insert(rows.end(), chunk.begin(), chunk.end());
  return rows;
}

std::string_view quantity_name(Quantity q) { return q == Quantity::kPhi ? "phi" : "gamma"; }

Quantity parse_quantity(std::string_view name) {
  if (name == "phi") return Quantity::kPhi;
  if (name == "gamma") return Quantity::kGamma;
  throw std::invalid_argument("unknown quantity '" + std::string(name) + "' (expected phi or gamma)");
}

void CrossoverQuery::validate() const {
  if (first == second) throw std::invalid_argument("CrossoverQuery: strategies must differ");
  if (!(eta_lo > 0.0 && eta_lo < eta_hi && eta_hi <= 1.0)) {
    throw std::invalid_argument("CrossoverQuery: bracket must satisfy 0 < eta_lo < eta_hi <= 1");
  }
  if (!(tolerance > 0.0)) throw std::invalid_argument("CrossoverQuery: tolerance must be positive");
  StellarParams(epsilon, gamma, phi);
}

double crossover_gap(const CrossoverQuery& q, double eta) {
  const StellarParams p(q.epsilon, q.gamma, q.phi);
  const LinkParams link(eta, q.squeezing);
  const StrategyQFI a = evaluate_strategy(q.first, p, link);
  const StrategyQFI b = evaluate_strategy(q.second, p, link);
  if (q.quantity == Quantity::kPhi) return (a.j_phi() - b.j_phi()) / q.epsilon;
  return (a.j_gamma() - b.j_gamma()) / q.epsilon;
}

double find_crossover(const CrossoverQuery& q) {
  q.validate();
  auto gap = [&q](double eta) { return crossover_gap(q, eta); };
  const double g_lo = gap(q.eta_lo);
  const double g_hi = gap(q.eta_hi);
  if (g_lo == 0.0) return q.eta_lo;
  if (g_hi == 0.0) return q.eta_hi;
  if ((g_lo > 0.0) == (g_hi > 0.0)) {
    std::ostringstream msg;
    msg.precision(10);
    msg << "find_crossover: no sign change of " << strategy_name(q.first) << " - " << strategy_name(q.second)
        << " (" << quantity_name(q.quantity) << ") over [" << q.eta_lo << ", " << q.eta_hi
        << "]: gap(eta_lo) = " << g_lo << ", gap(eta_hi) = " << g_hi;
    throw std::invalid_argument(msg.str());
  }
  const double tol = q.tolerance;
  boost::uintmax_t max_iter = 200;
  const auto bracket = boost::math::tools::bisect(
      gap, q.eta_lo, q.eta_hi, [tol](double a, double b) { return std::abs(b - a) < tol; }, max_iter);
  return 0.5 * (bracket.first + bracket.second);
}

}  // namespace sqfi
