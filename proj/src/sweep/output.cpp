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


#include "sqfi/sweep/output.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

namespace sqfi {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::scientific, 16);
  return std::string(buf.data(), res.ptr);
}

std::string format_squeezing(const Squeezing& s) { return s.is_infinite() ? "inf" : format_number(s.r()); }

namespace {

std::string r_field(const SweepRow& row) { return row.squeezing ? format_squeezing(*row.squeezing) : "nan"; }

}  // namespace

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool header) {
  if (header) out << kCsvHeader << '\n';
  for (const auto& row : rows) {
    out << axis_name(row.axis) << ',' << format_number(row.axis_value) << ',' << strategy_name(row.strategy) << ','
        << r_field(row) << ',' << format_number(row.eta) << ',' << format_number(row.epsilon) << ','
        << format_number(row.gamma) << ',' << format_number(row.j_phi_per_photon) << ','
        << (row.j_gamma_per_photon ? format_number(*row.j_gamma_per_photon) : "nan") << '\n';
  }
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  write_csv(out, rows);
  return out.str();
}

void write_json(std::ostream& out, const std::vector<SweepRow>& rows) {
  using json = nlohmann::ordered_json;
  json doc;
  json columns = json::array();
  std::istringstream header{std::string(kCsvHeader)};
  for (std::string col; std::getline(header, col, ',');) columns.push_back(col);
  doc["columns"] = columns;
  json items = json::array();
  for (const auto& row : rows) {
    json item;
    item["axis"] = std::string(axis_name(row.axis));
    item["axis_value"] = row.axis_value;
    item["strategy"] = std::string(strategy_name(row.strategy));
    if (!row.squeezing) {
      item["r"] = nullptr;
    } else if (row.squeezing->is_infinite()) {
      item["r"] = "inf";
    } else {
      item["r"] = row.squeezing->r();
    }
    item["eta"] = row.eta;
    item["epsilon"] = row.epsilon;
    item["gamma"] = row.gamma;
    item["J_phi_per_photon"] = row.j_phi_per_photon;
    item["J_gamma_per_photon"] = row.j_gamma_per_photon ? json(*row.j_gamma_per_photon) : json(nullptr);
    items.push_back(std::move(item));
  }
  doc["rows"] = std::move(items);
  out << doc.dump(2) << '\n';
}

std::string to_json(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  write_json(out, rows);
  return out.str();
}

void write_crossover_csv(std::ostream& out, const std::vector<CrossoverResult>& results) {
  out << kCrossoverCsvHeader << '\n';
  for (const auto& r : results) {
    out << strategy_name(r.query.first) << ',' << strategy_name(r.query.second) << ','
        << quantity_name(r.query.quantity) << ',' << format_number(r.query.epsilon) << ','
        << format_number(r.query.gamma) << ',' << format_squeezing(r.query.squeezing) << ','
        << format_number(r.eta_cross) << '\n';
  }
}

}  // namespace sqfi
