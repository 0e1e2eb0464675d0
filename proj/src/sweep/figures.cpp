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


#include "sqfi/sweep/figures.hpp"

#include <fstream>
#include <stdexcept>

namespace sqfi {

namespace {

const std::vector<Squeezing> kFig3Squeezings{Squeezing::finite(0.5), Squeezing::finite(1.0),
                                             Squeezing::finite(1.5), Squeezing::finite(2.0),
                                             Squeezing::infinite()};

SweepSpec base(double epsilon, double gamma, Axis axis, AxisRange range) {
  SweepSpec s;
  s.epsilon = epsilon;
  s.gamma = gamma;
  s.axis = axis;
  s.range = range;
  return s;
}

CrossoverQuery crossing(Strategy a, Strategy b, double epsilon, double gamma, Quantity q, double eta_lo) {
  CrossoverQuery c;
  c.first = a;
  c.second = b;
  c.epsilon = epsilon;
  c.gamma = gamma;
  c.quantity = q;
  c.eta_lo = eta_lo;
  return c;
}

FigurePreset fig2(const std::string& id, double gamma) {
  FigurePanel panel{"fig" + id, {}};
  for (double e : {1.0, 1e-1, 1e-2, 1e-3}) {
    SweepSpec s = base(e, gamma, Axis::kR, {0.0, 4.0, 81, Spacing::kLinear});
    s.eta = 1.0;
    panel.sweeps.push_back(s);
  }
  return {id, {panel}, {}};
}

FigurePreset fig3() {
  SweepSpec full = base(0.3, 1.0, Axis::kEta, {0.001, 1.0, 300, Spacing::kLinear});
  full.squeezings = kFig3Squeezings;
  SweepSpec zoom = base(0.3, 1.0, Axis::kEta, {0.001, 0.25, 250, Spacing::kLinear});
  zoom.squeezings = kFig3Squeezings;
  return {"3",
          {{"fig3a", {full}}, {"fig3b", {zoom}}},
          {crossing(Strategy::kTeleport, Strategy::kDirect, 0.3, 1.0, Quantity::kPhi, 0.01),
           crossing(Strategy::kTeleport, Strategy::kLocalHeterodyne, 0.3, 1.0, Quantity::kPhi, 0.01),
           crossing(Strategy::kDirect, Strategy::kLocalHeterodyne, 0.3, 1.0, Quantity::kPhi, 0.01)}};
}

FigurePreset fig4() {
  FigurePreset p{"4", {{"fig4a", {}}, {"fig4b", {}}}, {}};
  for (double e : {0.1, 0.3, 1.0}) {
    p.panels[0].sweeps.push_back(base(e, 1.0, Axis::kEta, {0.001, 0.6, 300, Spacing::kLinear}));
    p.crossovers.push_back(crossing(Strategy::kTeleport, Strategy::kDirect, e, 1.0, Quantity::kPhi, 1e-3));
    p.crossovers.push_back(
        crossing(Strategy::kTeleport, Strategy::kLocalHeterodyne, e, 1.0, Quantity::kPhi, 1e-3));
  }
  // Dense (epsilon, eta) grid; boundary tracing is left to the plotting side.
  const std::vector<double> eps = AxisRange{1e-3, 10.0, 41, Spacing::kLog}.values();
  for (double e : eps) {
    p.panels[1].sweeps.push_back(base(e, 1.0, Axis::kEta, {1e-4, 1.0, 200, Spacing::kLog}));
    p.crossovers.push_back(crossing(Strategy::kTeleport, Strategy::kDirect, e, 1.0, Quantity::kPhi, 1e-5));
    p.crossovers.push_back(
        crossing(Strategy::kTeleport, Strategy::kLocalHeterodyne, e, 1.0, Quantity::kPhi, 1e-5));
  }
  return p;
}

FigurePreset fig5() {
  FigurePanel panel{"fig5", {}};
  for (double eta : {1.0, 0.8}) {
    SweepSpec s = base(0.3, 0.0, Axis::kGamma, {0.0, 0.95, 96, Spacing::kLinear});
    s.eta = eta;
    panel.sweeps.push_back(s);
  }
  return {"5", {panel}, {}};
}

FigurePreset fig6() {
  SweepSpec a = base(0.3, 0.95, Axis::kEta, {0.001, 1.0, 300, Spacing::kLinear});
  a.squeezings = kFig3Squeezings;
  FigurePreset p{"6", {{"fig6a", {a}}, {"fig6b", {}}}, {}};
  for (double e : {0.3, 1.0, 3.0}) {
    p.panels[1].sweeps.push_back(base(e, 0.95, Axis::kEta, {0.001, 0.3, 300, Spacing::kLinear}));
    p.crossovers.push_back(crossing(Strategy::kTeleport, Strategy::kDirect, e, 0.95, Quantity::kGamma, 1e-4));
  }
  return p;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids{"2a", "2b", "3", "4", "5", "6"};
  return ids;
}

FigurePreset figure_preset(std::string_view id) {
  if (id == "2a") return fig2("2a", 1.0);
  if (id == "2b") return fig2("2b", 0.95);
  if (id == "3") return fig3();
  if (id == "4") return fig4();
  if (id == "5") return fig5();
  if (id == "6") return fig6();
  throw std::invalid_argument("unknown figure '" + std::string(id) + "' (expected 2a, 2b, 3, 4, 5 or 6)");
}

FigureData compute_figure(const FigurePreset& preset, unsigned threads) {
  FigureData data;
  for (const auto& panel : preset.panels) {
    std::vector<SweepRow> rows;
    for (SweepSpec spec : panel.sweeps) {
      spec.threads = threads;
      const auto chunk = run_sweep(spec);
      rows.insert(rows.end(), chunk.begin(), chunk.end());
    }
    data.panels.emplace_back(panel.name, std::move(rows));
  }
  for (const auto& q : preset.crossovers) data.crossovers.push_back({q, find_crossover(q)});
  return data;
}

std::vector<std::filesystem::path> write_figure(const FigureData& data, const std::string& id,
                                                const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  auto open = [](const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
  };
  for (const auto& [name, rows] : data.panels) {
    const auto path = dir / (name + ".csv");
    auto out = open(path);
    write_csv(out, rows);
    written.push_back(path);
  }
  if (!data.crossovers.empty()) {
    const auto path = dir / ("fig" + id + "_crossovers.csv");
    auto out = open(path);
    write_crossover_csv(out, data.crossovers);
    written.push_back(path);
  }
  return written;
}

}  // namespace sqfi
