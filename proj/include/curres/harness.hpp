// Copyright 2026 The curres Authors
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

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "curres/profile.hpp"

namespace curres {

const char* library_version() noexcept;

/// Initial profile description used by experiment configs.
///   constant:  density `value` on [0,1]
///   piecewise: `values[k]` on [breaks[k], breaks[k+1])
///   with-edge: density `value` on [0, edge), zero after
///   file:      profile JSON at `path`
/// Every kind may add an atom at 0.
struct ProfileSpec {
  std::string kind = "constant";
  double value = 1.0;
  double atom = 0.0;
  double edge = 0.5;
  std::vector<double> breaks;
  std::vector<double> values;
  std::string path;
};

MacroProfile build_profile(const ProfileSpec& spec, std::size_t cells);
ProfileSpec profile_spec_from_json(const std::string& text);

/// Accepts either a ProfileSpec object (has "kind") or a stored profile
/// (has "densities"); a stored profile keeps its own grid.
MacroProfile profile_from_any_json(const std::string& text, std::size_t cells);

struct ExperimentConfig {
  std::string mode = "hydro";  // hydro | approx
  ProfileSpec profile;
  double j = 0.5;
  double t = 0.25;
  std::vector<long> n_values{100, 200, 400};
  std::vector<int> depths{8};
  long replicas = 200;
  std::uint64_t seed = 1;
  std::size_t grid_cells = kDefaultGridCells;
  std::string out_dir;
  double delta = 0.1;  // approx mode
  long blocks = 3;     // approx mode
};

/// Throws kConfiguration on invalid fields.
void validate(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);
/// FNV-1a of the canonical JSON form.
std::uint64_t config_hash(const ExperimentConfig& cfg);

/// CURRES_WORKERS when set, else the hardware concurrency.
int worker_count();
/// Runs body(i) for i in [0, count) on the worker pool. Callers write into
/// per-index slots, so results do not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // from batch means
  std::vector<double> batch_means;
};
/// Mean and standard error from `batches` equal consecutive batches.
MonteCarloEstimate batch_estimate(const std::vector<double>& samples, int batches = 10);

/// a_{i+1} - a_i <= 2 sqrt(se_i^2 + se_{i+1}^2) for every i.
bool decreasing_within_error(const std::vector<MonteCarloEstimate>& seq);

struct HydroRow {
  long n = 0;
  MonteCarloEstimate distance;       // max_x |eps F_eps(x) - F(eps x; psi)|
  MonteCarloEstimate density_field;  // |eps sum cos(pi eps x) xi(x) - int cos(pi r) psi|
  double initial_block_deviation = 0.0;
};

struct HydroReport {
  ExperimentConfig config;
  std::uint64_t hash = 0;
  MacroProfile psi = MacroProfile::uniform(1, 0.0);
  double psi_gap = 0.0;
  int psi_depth = 0;
  bool psi_certified = false;
  std::vector<HydroRow> rows;
  bool decreasing = false;
};

/// Micro vs macro at time t for every N in the config. psi is the
/// separating element at the deepest configured depth; with j = 0 it is the
/// heat semigroup applied to the initial profile.
HydroReport hydro_compare(const ExperimentConfig& cfg);
std::string hydro_report_json(const HydroReport& report);

struct ApproxRow {
  long n = 0;
  MonteCarloEstimate minus;  // xi^(delta,-) vs S^(delta,-) after `blocks` blocks
  MonteCarloEstimate plus;   // xi^(delta,+) vs S^(delta,+)
  double discrete = 0.0;     // lattice scheme u_k vs S^(delta,-)
  double initial = 0.0;      // k = 0: sample_initial vs the profile
};

struct ApproxReport {
  ExperimentConfig config;
  std::uint64_t hash = 0;
  std::vector<ApproxRow> rows;
  bool minus_decreasing = false;
  bool plus_decreasing = false;
};

ApproxReport approx_process_compare(const ExperimentConfig& cfg);
std::string approx_report_json(const ApproxReport& report);

/// Runs the experiment described by a config JSON (mode hydro or approx),
/// writes report.json (and the psi profile for hydro) into out_dir when one
/// is set, and returns the report.
std::string run_compare(const std::string& config_json);

/// Replicas of the true process from sample_initial(u). Writes
/// replica_<r>.csv (x, eps_F), counts.json and report.json into out_dir.
std::string run_simulate(const MacroProfile& u, long n, double j, double t, long replicas,
                         std::uint64_t seed, const std::string& out_dir);

/// Barrier ladder over delta_n = t 2^-n; writes lower_<n>.json,
/// upper_<n>.json, ladder.csv (n, delta, gap, mass_error), psi.json, psi.csv.
std::string run_barriers(const MacroProfile& u, double j, double t, int depth,
                         const std::string& out_dir);

/// Separating element with its certified bracket.
std::string run_separate(const MacroProfile& u, double j, double t, int depth, double gap_tol,
                         double tau, const std::string& out_dir);

/// Sandwich verification over `samples` clock realizations.
std::string run_couple(const MacroProfile& u, long n, double j, double delta, double delta_fine,
                       double t, long samples, std::uint64_t seed);

}  // namespace curres
