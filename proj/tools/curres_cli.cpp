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

// Command-line front end. Talks to the library only through curres.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "curres/curres.h"

namespace {

constexpr int kExitLibraryError = 2;

struct LibraryError {
  curres_status status;
};

void check(curres_status status) {
  if (status != CURRES_OK) throw LibraryError{status};
}

// Owns a C handle or string for the duration of a subcommand.
template <typename T, void (*Free)(T*)>
struct Owned {
  T* ptr = nullptr;
  Owned() = default;
  Owned(const Owned&) = delete;
  Owned& operator=(const Owned&) = delete;
  ~Owned() {
    if (ptr != nullptr) Free(ptr);
  }
};
using Profile = Owned<curres_profile, curres_profile_free>;
using Text = Owned<char, curres_string_free>;

void print_report(const Text& report) { std::cout << report.ptr << "\n"; }

void load_profile(const std::string& path, std::size_t grid, Profile& out) {
  if (path.empty()) {
    check(curres_profile_uniform(grid, 1.0, &out.ptr));
  } else {
    check(curres_profile_load(path.c_str(), grid, &out.ptr));
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<int> parse_ints(const std::string& list) {
  std::vector<int> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Current reservoirs: particle simulation and barrier dynamics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(curres_version()));

  std::string profile_path;
  std::string out_dir;
  std::size_t grid = 512;
  long n = 100;
  double j = 0.5;
  double t = 0.25;
  long replicas = 100;
  std::uint64_t seed = 0;
  int depth = 8;
  double gap_tol = 0.0;
  double tau = 0.0;
  double delta = 0.2;
  double delta_fine = 0.05;
  long samples = 200;
  std::string config_path;
  std::string occupations;
  std::string walkers;
  std::string suite = "all";

  auto* simulate = app.add_subcommand("simulate", "Replicas of the particle system");
  simulate->add_option("--profile", profile_path, "Initial profile JSON (default: rho = 1)");
  simulate->add_option("--n", n, "Lattice size N")->check(CLI::Range(2L, 1L << 20));
  simulate->add_option("--j", j, "Current")->check(CLI::NonNegativeNumber);
  simulate->add_option("--t", t, "Macroscopic time")->check(CLI::PositiveNumber);
  simulate->add_option("--replicas", replicas, "Number of replicas")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "Base seed")->required();
  simulate->add_option("--grid", grid, "Cells for profile specs")->check(CLI::PositiveNumber);
  simulate->add_option("--out", out_dir, "Output directory");

  auto* barriers = app.add_subcommand("barriers", "Dyadic ladder of lower and upper barriers");
  barriers->add_option("--init", profile_path, "Initial profile JSON (default: rho = 1)");
  barriers->add_option("--j", j, "Current")->check(CLI::PositiveNumber);
  barriers->add_option("--t", t, "Macroscopic time")->check(CLI::PositiveNumber);
  barriers->add_option("--depth", depth, "Ladder depth")->check(CLI::Range(1, 16));
  barriers->add_option("--grid", grid, "Cells for profile specs")->check(CLI::PositiveNumber);
  barriers->add_option("--out", out_dir, "Output directory");

  auto* separate = app.add_subcommand("separate", "Separating element at time t");
  separate->add_option("--init", profile_path, "Initial profile JSON (default: rho = 1)");
  separate->add_option("--j", j, "Current")->check(CLI::PositiveNumber);
  separate->add_option("--t", t, "Macroscopic time")->check(CLI::PositiveNumber);
  separate->add_option("--depth", depth, "Maximum ladder depth")->check(CLI::Range(1, 16));
  separate->add_option("--gap-tol", gap_tol, "Stop once the gap is below this");
  separate->add_option("--tau", tau, "Ladder base (default: t)");
  separate->add_option("--grid", grid, "Cells for profile specs")->check(CLI::PositiveNumber);
  separate->add_option("--out", out_dir, "Output directory");

  auto* compare = app.add_subcommand("compare", "Microscopic vs macroscopic comparison");
  compare->add_option("config", config_path, "Experiment config JSON")->required();

  auto* couple = app.add_subcommand("couple", "Pathwise sandwich check on sampled clocks");
  couple->add_option("--profile", profile_path, "Initial profile JSON (default: rho = 1)");
  couple->add_option("--n", n, "Lattice size N")->check(CLI::Range(2L, 1L << 20));
  couple->add_option("--j", j, "Current")->check(CLI::NonNegativeNumber);
  couple->add_option("--delta", delta, "Coarse block")->check(CLI::PositiveNumber);
  couple->add_option("--delta-fine", delta_fine, "Fine block")->check(CLI::PositiveNumber);
  couple->add_option("--t", t, "Macroscopic time")->check(CLI::PositiveNumber);
  couple->add_option("--samples", samples, "Sampled clock sets")->check(CLI::PositiveNumber);
  couple->add_option("--seed", seed, "Base seed")->required();
  couple->add_option("--grid", grid, "Cells for profile specs")->check(CLI::PositiveNumber);

  auto* duality = app.add_subcommand("duality", "Both sides of the walker duality");
  duality->add_option("--occupations", occupations, "Comma-separated xi(0..N)")->required();
  duality->add_option("--walkers", walkers, "Comma-separated walker sites")->required();
  duality->add_option("--t", t, "Time")->check(CLI::NonNegativeNumber);

  auto* accept = app.add_subcommand("accept", "Acceptance suite");
  accept->add_option("--suite", suite, "algebra|kernel|barriers|coupling|hydro|duality|longtime|all");

  CLI11_PARSE(app, argc, argv);

  try {
    Text report;
    const char* out = out_dir.empty() ? nullptr : out_dir.c_str();
    if (*simulate) {
      Profile u;
      load_profile(profile_path, grid, u);
      check(curres_run_simulate(u.ptr, n, j, t, replicas, seed, out, &report.ptr));
    } else if (*barriers) {
      Profile u;
      load_profile(profile_path, grid, u);
      check(curres_run_barriers(u.ptr, j, t, depth, out, &report.ptr));
    } else if (*separate) {
      Profile u;
      load_profile(profile_path, grid, u);
      check(curres_run_separate(u.ptr, j, t, depth, gap_tol, tau, out, &report.ptr));
    } else if (*compare) {
      check(curres_compare(read_file(config_path).c_str(), &report.ptr));
    } else if (*couple) {
      Profile u;
      load_profile(profile_path, grid, u);
      check(curres_run_couple(u.ptr, n, j, delta, delta_fine, t, samples, seed, &report.ptr));
    } else if (*duality) {
      const std::vector<int> occ = parse_ints(occupations);
      const std::vector<int> w = parse_ints(walkers);
      double lhs = 0.0;
      double rhs = 0.0;
      check(curres_duality_check(occ.data(), occ.size(), w.data(), w.size(), t, &lhs, &rhs));
      std::printf("{\"lhs\": %.17g, \"rhs\": %.17g, \"difference\": %.3e}\n", lhs, rhs, lhs - rhs);
      return 0;
    } else if (*accept) {
      int passed = 0;
      check(curres_run_acceptance(suite.c_str(), &report.ptr, &passed));
      print_report(report);
      return passed ? 0 : 1;
    }
    print_report(report);
  } catch (const LibraryError& e) {
    std::cerr << "error (" << curres_status_name(e.status) << "): " << curres_last_error() << "\n";
    return e.status == CURRES_INVALID_ARGUMENT || e.status == CURRES_CONFIGURATION
               ? kExitLibraryError
               : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitLibraryError;
  }
  return 0;
}
