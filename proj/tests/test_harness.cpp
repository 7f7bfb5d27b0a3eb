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

#include <cmath>
#include <cstdlib>
#include <filesystem>

#include "curres/acceptance.hpp"
#include "curres/error.hpp"
#include "curres/harness.hpp"
#include "curres/io.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace curres;
using nlohmann::json;

namespace {

std::string small_config(const std::string& mode) {
  return json{{"mode", mode},
              {"profile", {{"kind", "constant"}, {"value", 1.0}}},
              {"j", 0.5},
              {"t", 0.05},
              {"n_values", {40, 80}},
              {"depths", {4}},
              {"replicas", 20},
              {"seed", 5},
              {"grid_cells", 256},
              {"delta", 0.025},
              {"blocks", 2}}
      .dump();
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

}  // namespace

TEST_CASE("config parsing and validation") {
  const ExperimentConfig cfg = config_from_json(small_config("hydro"));
  CHECK(cfg.n_values == std::vector<long>{40, 80});
  CHECK(cfg.seed == 5);
  json no_seed = json::parse(small_config("hydro"));
  no_seed.erase("seed");
  CHECK(code_of([&] { (void)config_from_json(no_seed.dump()); }) == ErrorCode::kConfiguration);
  json descending = json::parse(small_config("hydro"));
  descending["n_values"] = {80, 40};
  CHECK(code_of([&] { (void)config_from_json(descending.dump()); }) == ErrorCode::kConfiguration);
  CHECK(code_of([] { (void)config_from_json("{not json"); }) == ErrorCode::kConfiguration);
  json bad_mode = json::parse(small_config("hydro"));
  bad_mode["mode"] = "other";
  CHECK(code_of([&] { (void)config_from_json(bad_mode.dump()); }) == ErrorCode::kConfiguration);
}

TEST_CASE("config hash ignores the output directory") {
  ExperimentConfig a = config_from_json(small_config("hydro"));
  ExperimentConfig b = a;
  b.out_dir = "/tmp/elsewhere";
  CHECK(config_hash(a) == config_hash(b));
  b.seed = 6;
  CHECK(config_hash(a) != config_hash(b));
  CHECK(config_from_json(config_to_json(a)).n_values == a.n_values);
}

TEST_CASE("profile specs") {
  ProfileSpec spec;
  spec.kind = "with-edge";
  spec.value = 2.0;
  spec.edge = 0.25;
  const MacroProfile u = build_profile(spec, 64);
  CHECK(u.total_mass() == doctest::Approx(0.5));
  spec.kind = "piecewise";
  spec.breaks = {0.0, 0.5, 1.0};
  spec.values = {1.0, 3.0};
  spec.atom = 0.1;
  CHECK(build_profile(spec, 64).total_mass() == doctest::Approx(2.1));
  spec.kind = "nonsense";
  CHECK(code_of([&] { (void)build_profile(spec, 64); }) == ErrorCode::kConfiguration);
  const MacroProfile stored = profile_from_any_json(profile_to_json(u), 128);
  CHECK(stored.cells() == 64);
}

TEST_CASE("batch means") {
  std::vector<double> s(100);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<double>(i % 10);
  const MonteCarloEstimate e = batch_estimate(s);
  CHECK(e.mean == doctest::Approx(4.5));
  CHECK(e.batch_means.size() == 10);
  CHECK(e.std_error == doctest::Approx(0.0));
  MonteCarloEstimate hi{0.2, 0.01, {}};
  MonteCarloEstimate lo{0.1, 0.01, {}};
  MonteCarloEstimate bump{0.12, 0.01, {}};
  CHECK(decreasing_within_error({hi, lo}));
  CHECK(decreasing_within_error({lo, bump}));
  CHECK_FALSE(decreasing_within_error({lo, hi}));
}

TEST_CASE("hydro reports are deterministic across worker counts") {
  const ExperimentConfig cfg = config_from_json(small_config("hydro"));
  setenv("CURRES_WORKERS", "1", 1);
  const std::string one = hydro_report_json(hydro_compare(cfg));
  setenv("CURRES_WORKERS", "4", 1);
  const std::string four = hydro_report_json(hydro_compare(cfg));
  unsetenv("CURRES_WORKERS");
  CHECK(one == four);
  const json report = json::parse(one);
  CHECK(report["rows"].size() == 2);
  CHECK(report["provenance"].contains("config_hash"));
  CHECK(report["provenance"]["seed"] == 5);
}

TEST_CASE("without reservoirs the target is the heat flow") {
  ExperimentConfig cfg = config_from_json(small_config("hydro"));
  cfg.j = 0.0;
  const HydroReport r = hydro_compare(cfg);
  CHECK(r.psi.total_mass() == doctest::Approx(1.0));
  CHECK(r.rows.back().distance.mean < 0.1);
}

TEST_CASE("approx comparison at k = 0 is the initial fidelity") {
  ExperimentConfig cfg = config_from_json(small_config("approx"));
  cfg.blocks = 0;
  const ApproxReport r = approx_process_compare(cfg);
  for (const auto& row : r.rows) {
    CHECK(row.minus.mean == doctest::Approx(row.initial));
    CHECK(row.plus.mean == doctest::Approx(row.initial));
    CHECK(row.initial <= std::pow(1.0 / row.n, 1.0 / 20.0));
  }
}

TEST_CASE("couple report") {
  const json r = json::parse(
      run_couple(MacroProfile::uniform(64, 1.0), 30, 0.5, 0.1, 0.05, 0.2, 5, 3));
  CHECK(r["samples"] == 5);
  CHECK(r["violations"].empty());
  CHECK(r["first_violation"].is_null());
  CHECK(code_of([] {
          (void)run_couple(MacroProfile::uniform(64, 1.0), 30, 0.5, 0.1, 0.05, 0.25, 5, 3);
        }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("simulate and barrier runs write their files") {
  const auto dir = std::filesystem::temp_directory_path() / "curres_harness_test";
  std::filesystem::remove_all(dir);
  (void)run_simulate(MacroProfile::uniform(64, 1.0), 30, 0.5, 0.05, 3, 9, dir.string());
  CHECK(std::filesystem::exists(dir / "replica_00002.csv"));
  CHECK(std::filesystem::exists(dir / "counts.json"));
  CHECK(std::filesystem::exists(dir / "report.json"));
  const auto bdir = dir / "barriers";
  (void)run_barriers(MacroProfile::uniform(128, 1.0), 0.2, 0.1, 3, bdir.string());
  CHECK(std::filesystem::exists(bdir / "ladder.csv"));
  CHECK(std::filesystem::exists(bdir / "upper_3.json"));
  CHECK(std::filesystem::exists(bdir / "psi.csv"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("acceptance runner") {
  CHECK(code_of([] { (void)run_criteria("bogus"); }) == ErrorCode::kInvalidArgument);
  const json verdict = json::parse(run_acceptance("kernel"));
  CHECK(verdict["passed"] == true);
  CHECK(verdict["criteria"].size() == 1);
}
