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

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "sqfi/errors.hpp"

namespace sqfi {

/// Correlated thermal (stellar) source: total mean photon number epsilon,
/// degree of coherence gamma and relative phase phi. phi is stored reduced to [0, 2 pi).
struct StellarParams {
  double epsilon;
  double gamma;
  double phi;

  StellarParams(double epsilon_, double gamma_, double phi_ = std::numbers::pi / 4)
      : epsilon(epsilon_), gamma(gamma_), phi(wrap_phase(phi_)) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
      throw DomainError("StellarParams: epsilon must be a positive finite photon number");
    }
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("StellarParams: gamma outside [0, 1]");
    if (!std::isfinite(phi_)) throw DomainError("StellarParams: phi must be finite");
  }

  static double wrap_phase(double phi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod(phi, two_pi);
    if (w < 0.0) w += two_pi;
    if (w >= two_pi) w = 0.0;
    return w;
  }
};

/// TMSV squeezing: a finite r >= 0, or the infinite-squeezing limit.
class Squeezing {
 public:
  /// cosh(2r) must stay representable in double precision.
  static constexpr double kMaxFinite = 177.0;

  static Squeezing finite(double r) {
    if (!(r >= 0.0 && r <= kMaxFinite)) {
      std::ostringstream msg;
      msg << "Squeezing: r = " << r << " outside [0, " << kMaxFinite << "]; use Squeezing::infinite()";
      throw DomainError(msg.str());
    }
    return Squeezing(r, false);
  }
  static Squeezing infinite() { return Squeezing(0.0, true); }

  bool is_infinite() const { return infinite_; }

  double r() const {
    if (infinite_) throw DomainError("Squeezing: r requested for infinite squeezing");
    return r_;
  }

  std::string to_string() const {
    if (infinite_) return "inf";
    std::ostringstream out;
    out << r_;
    return out.str();
  }

  bool operator==(const Squeezing&) const = default;

 private:
  Squeezing(double r, bool infinite) : r_(r), infinite_(infinite) {}
  double r_;
  bool infinite_;
};

/// Lossy TMSV link: both arms see the same transmission eta.
///
/// The derived quantities are
///   c = eta cosh 2r + (1 - eta),  s = eta sinh 2r,
/// and, formed without cancellation,
///   c - 1     = 2 eta sinh^2 r,
///   c^2 - s^2 = 1 + 2 (1 - eta)(c - 1).
struct LinkParams {
  double eta;
  Squeezing squeezing;

  LinkParams(double eta_, Squeezing squeezing_) : eta(eta_), squeezing(squeezing_) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("LinkParams: eta outside [0, 1]");
  }

  // Long double keeps closed forms usable through the whole finite-r range.
  long double c_minus_one() const {
    const long double sh = std::sinh(static_cast<long double>(squeezing.r()));
    return 2.0L * eta * sh * sh;
  }
  long double c_long() const { return 1.0L + c_minus_one(); }
  long double s_long() const { return eta * std::sinh(2.0L * squeezing.r()); }
  long double c2_minus_s2() const { return 1.0L + 2.0L * (1.0L - eta) * c_minus_one(); }

  double c() const { return static_cast<double>(c_long()); }
  double s() const { return static_cast<double>(s_long()); }
};

}  // namespace sqfi
