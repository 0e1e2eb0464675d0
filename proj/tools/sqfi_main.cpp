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


// sqfi: sweeps, crossovers, figure data and self-verification from the command line.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "sqfi/stellar/params.hpp"
#include "sqfi/stellar/strategies.hpp"
#include "sqfi/sweep/figures.hpp"
#include "sqfi/sweep/output.hpp"
#include "sqfi/sweep/sweep.hpp"
#include "sqfi/sweep/verify.hpp"

namespace fs = std::filesystem;
using namespace sqfi;

namespace {

constexpr const char* kOutputDirEnv = "SQFI_OUTPUT_DIR";

Squeezing parse_squeezing(const std::string& text) {
  if (text == "inf" || text == "infinite" || text == "INFINITE") return Squeezing::infinite();
  std::size_t used = 0;
  const double r = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument("bad squeezing value '" + text + "'");
  return Squeezing::finite(r);
}

/// Relative paths land under $SQFI_OUTPUT_DIR when it is set.
fs::path resolve_output(const std::string& path) {
  fs::path p(path);
  const char* dir = std::getenv(kOutputDirEnv);
  if (p.is_relative() && dir != nullptr && *dir != '\0') p = fs::path(dir) / p;
  return p;
}

fs::path default_output_dir() {
  const char* dir = std::getenv(kOutputDirEnv);
  return (dir != nullptr && *dir != '\0') ? fs::path(dir) : fs::path(".");
}

template <typename Write>
void emit(const std::string& output, Write&& write) {
  if (output.empty() || output == "-") {
    write(std::cout);
    return;
  }
  const fs::path path = resolve_output(output);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write(out);
}

struct SweepArgs {
  std::vector<std::string> strategies{"di", "local_het", "teleport"};
  double epsilon = 0.3;
  double gamma = 1.0;
  std::string quantity = "phi";
  double phi = std::numbers::pi / 4;
  double eta = 1.0;
  std::string axis = "eta";
  double min = 0.01;
  double max = 1.0;
  int count = 100;
  std::string spacing = "linear";
  std::vector<std::string> r{"inf"};
  std::string format = "csv";
  std::string output;
  unsigned threads = 0;
};

struct CrossoverArgs {
  std::vector<std::string> pair{"teleport", "di"};
  double epsilon = 0.3;
  double gamma = 1.0;
  double phi = std::numbers::pi / 4;
  std::string r = "inf";
  double eta_lo = 0.01;
  double eta_hi = 0.99;
  double tolerance = 1e-6;
  std::string quantity = "phi";
  std::string output;
};

int run_sweep_command(const SweepArgs& a) {
  SweepSpec spec;
  spec.strategies.clear();
  for (const auto& s : a.strategies) spec.strategies.push_back(parse_strategy(s));
  spec.epsilon = a.epsilon;
  spec.gamma = a.gamma;
  spec.phi = a.phi;
  spec.eta = a.eta;
  spec.axis = parse_axis(a.axis);
  spec.range = {a.min, a.max, a.count, parse_spacing(a.spacing)};
  spec.squeezings.clear();
  for (const auto& r : a.r) spec.squeezings.push_back(parse_squeezing(r));
  spec.threads = a.threads;
  const auto rows = run_sweep(spec);
  if (a.format != "csv" && a.format != "json") throw std::invalid_argument("--format must be csv or json");
  emit(a.output, [&](std::ostream& out) {
    if (a.format == "csv") {
      write_csv(out, rows);
    } else {
      write_json(out, rows);
    }
  });
  return 0;
}

int run_crossover_command(const CrossoverArgs& a) {
  if (a.pair.size() != 2) throw std::invalid_argument("--pair takes exactly two strategies");
  CrossoverQuery q;
  q.first = parse_strategy(a.pair[0]);
  q.second = parse_strategy(a.pair[1]);
  q.epsilon = a.epsilon;
  q.gamma = a.gamma;
  q.phi = a.phi;
  q.squeezing = parse_squeezing(a.r);
  q.eta_lo = a.eta_lo;
  q.eta_hi = a.eta_hi;
  q.tolerance = a.tolerance;
  q.quantity = parse_quantity(a.quantity);
  const double eta = find_crossover(q);
  emit(a.output, [&](std::ostream& out) { write_crossover_csv(out, {{q, eta}}); });
  return 0;
}

int run_verify_command(const VerifyOptions& options) {
  const VerifyReport report = run_verify(options);
  print_report(std::cout, report);
  return report.all_passed() ? 0 : 1;
}

int run_figure_command(const std::string& id, const std::string& dir, unsigned threads) {
  const FigurePreset preset = figure_preset(id);
  const fs::path out_dir = dir.empty() ? default_output_dir() : resolve_output(dir);
  const FigureData data = compute_figure(preset, threads);
  for (const auto& path : write_figure(data, preset.id, out_dir)) std::cout << path.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fisher information of stellar interferometry strategies"};
  app.set_config("--config", "", "key = value file (INI/TOML); command-line flags override it");
  app.require_subcommand(1);

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "Evaluate strategies over a parameter grid");
  sweep->add_option("--strategies", sa.strategies, "di, local_het, teleport")->delimiter(',')->capture_default_str();
  sweep->add_option("--epsilon", sa.epsilon, "Mean photon number")->capture_default_str();
  auto* sweep_gamma = sweep->add_option("--gamma", sa.gamma, "Degree of coherence (default 1, or 0.95 with --quantity gamma)");
  sweep->add_option("--quantity", sa.quantity, "phi or gamma; only sets the default coherence")->capture_default_str();
  sweep->add_option("--phi", sa.phi, "Relative phase")->capture_default_str();
  sweep->add_option("--eta", sa.eta, "Transmission when eta is not swept")->capture_default_str();
  sweep->add_option("--axis", sa.axis, "eta, r, gamma or epsilon")->capture_default_str();
  sweep->add_option("--min", sa.min, "Axis start")->capture_default_str();
  sweep->add_option("--max", sa.max, "Axis end")->capture_default_str();
  sweep->add_option("--count", sa.count, "Number of axis points (>= 2)")->capture_default_str();
  sweep->add_option("--spacing", sa.spacing, "linear or log")->capture_default_str();
  sweep->add_option("--r", sa.r, "Teleport squeezing values, 'inf' for infinite")->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--format", sa.format, "csv or json")->capture_default_str();
  sweep->add_option("--output,-o", sa.output, "Output file (stdout if omitted)");
  sweep->add_option("--threads", sa.threads, "Worker threads, 0 for all cores")->capture_default_str();

  CrossoverArgs ca;
  auto* cross = app.add_subcommand("crossover", "Locate eta where two strategies give equal information");
  cross->add_option("--pair", ca.pair, "Two strategies, e.g. teleport,di")->delimiter(',')->capture_default_str();
  cross->add_option("--epsilon", ca.epsilon, "Mean photon number")->capture_default_str();
  cross->add_option("--gamma", ca.gamma, "Degree of coherence")->capture_default_str();
  cross->add_option("--phi", ca.phi, "Relative phase")->capture_default_str();
  cross->add_option("--r", ca.r, "Teleport squeezing, 'inf' for infinite")->capture_default_str();
  cross->add_option("--eta-lo", ca.eta_lo, "Bracket start")->capture_default_str();
  cross->add_option("--eta-hi", ca.eta_hi, "Bracket end")->capture_default_str();
  cross->add_option("--tolerance", ca.tolerance, "Bracket width at termination")->capture_default_str();
  cross->add_option("--quantity", ca.quantity, "phi or gamma")->capture_default_str();
  cross->add_option("--output,-o", ca.output, "Output file (stdout if omitted)");

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Run invariant suites and oracle comparisons");
  verify->add_option("--seed", vo.seed, "Monte-Carlo seed")->capture_default_str();
  verify->add_option("--mc-samples", vo.mc_samples, "Monte-Carlo sample count")->capture_default_str();

  std::string figure_id;
  std::string figure_dir;
  unsigned figure_threads = 0;
  auto* figure = app.add_subcommand("figure", "Write the CSV data behind a figure preset");
  figure->add_option("id", figure_id, "2a, 2b, 3, 4, 5 or 6")->required()->check(CLI::IsMember(figure_ids()));
  figure->add_option("--output-dir,-o", figure_dir, "Directory for CSV files (default $SQFI_OUTPUT_DIR or .)");
  figure->add_option("--threads", figure_threads, "Worker threads, 0 for all cores")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*sweep && sweep_gamma->count() == 0 && parse_quantity(sa.quantity) == Quantity::kGamma) sa.gamma = 0.95;
    if (*sweep) return run_sweep_command(sa);
    if (*cross) return run_crossover_command(ca);
    if (*verify) return run_verify_command(vo);
    if (*figure) return run_figure_command(figure_id, figure_dir, figure_threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
