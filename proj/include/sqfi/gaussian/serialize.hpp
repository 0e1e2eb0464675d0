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

#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sqfi/gaussian/state.hpp"

namespace sqfi {

/// Debug text form of a double-precision state:
///
///   gaussian_state <n_modes>
///   mean <2n values>
///   cov <row 0>
///   cov <row 1>
///   ...
///
/// Values are written with 17 significant digits so parsing recovers them bit-exactly.
inline void write_debug_text(std::ostream& out, const GaussianStated& s) {
  out << "gaussian_state " << s.n_modes() << "\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "mean";
  for (int i = 0; i < s.dim(); ++i) out << ' ' << s.mean()(i);
  out << "\n";
  for (int i = 0; i < s.dim(); ++i) {
    out << "cov";
    for (int j = 0; j < s.dim(); ++j) out << ' ' << s.cov()(i, j);
    out << "\n";
  }
}

inline std::string to_debug_text(const GaussianStated& s) {
  std::ostringstream out;
  write_debug_text(out, s);
  return out.str();
}

inline GaussianStated read_debug_text(std::istream& in) {
  auto expect = [&in](const char* tag) {
    std::string word;
    if (!(in >> word) || word != tag) {
      throw std::invalid_argument(std::string("read_debug_text: expected '") + tag + "'");
    }
  };
  expect("gaussian_state");
  int n = 0;
  if (!(in >> n) || n < 1) throw std::invalid_argument("read_debug_text: bad mode count");
  Vecd mean(2 * n);
  Matd cov(2 * n, 2 * n);
  expect("mean");
  for (int i = 0; i < 2 * n; ++i) {
    if (!(in >> mean(i))) throw std::invalid_argument("read_debug_text: truncated mean");
  }
  for (int i = 0; i < 2 * n; ++i) {
    expect("cov");
    for (int j = 0; j < 2 * n; ++j) {
      if (!(in >> cov(i, j))) throw std::invalid_argument("read_debug_text: truncated covariance");
    }
  }
  return GaussianStated(std::move(mean), std::move(cov));
}

inline GaussianStated from_debug_text(const std::string& text) {
  std::istringstream in(text);
  return read_debug_text(in);
}

}  // namespace sqfi
