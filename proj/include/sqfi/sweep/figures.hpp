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


// Presets pinning the parameter choices of each figure.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sqfi/sweep/output.hpp"
#include "sqfi/sweep/sweep.hpp"

namespace sqfi {

struct FigurePanel {
  /// Output stem, e.g. "fig3a".
  std::string name;
  std::vector<SweepSpec> sweeps;
};

struct FigurePreset {
  std::string id;
  std::vector<FigurePanel> panels;
  /// Written to fig<id>_crossovers.csv when non-empty.
  std::vector<CrossoverQuery> crossovers;
};

/// "2a", "2b", "3", "4", "5", "6".
const std::vector<std::string>& figure_ids();
FigurePreset figure_preset(std::string_view id);

struct FigureData {
  std::vector<std::pair<std::string, std::vector<SweepRow>>> panels;
  std::vector<CrossoverResult> crossovers;
};

FigureData compute_figure(const FigurePreset& preset, unsigned threads = 0);

/// Writes one CSV per panel plus the crossover CSV; returns the paths written.
std::vector<std::filesystem::path> write_figure(const FigureData& data, const std::string& id,
                                                const std::filesystem::path& dir);

}  // namespace sqfi
