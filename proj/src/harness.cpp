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

#include "curres/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "curres/barrier.hpp"
#include "curres/coupling.hpp"
#include "curres/error.hpp"
#include "curres/heat_kernel.hpp"
#include "curres/io.hpp"
#include "curres/particles.hpp"
#include "json.hpp"

#ifndef CURRES_VERSION_STRING
#define CURRES_VERSION_STRING "0.0.0"
#endif

namespace curres {

using nlohmann::json;

const char* library_version() noexcept { return CURRES_VERSION_STRING; }

MacroProfile build_profile(const ProfileSpec& spec, std::size_t cells) {
  require(cells >= 1, ErrorCode::kConfiguration, "grid needs at least one cell");
  MacroProfile base = MacroProfile::uniform(cells, 0.0);
  if (spec.kind == "constant") {
    base = MacroProfile::uniform(cells, spec.value);
  } else if (spec.kind == "piecewise") {
    base = MacroProfile::piecewise(cells, spec.breaks, spec.values);
  } else if (spec.kind == "with-edge") {
    require(spec.edge > 0.0 && spec.edge < 1.0, ErrorCode::kConfiguration,
            "with-edge profile needs 0 < edge < 1");
    const std::vector<double> breaks{0.0, spec.edge, 1.0};
    const std::vector<double> values{spec.value, 0.0};
    base = MacroProfile::piecewise(cells, breaks, values);
  } else if (spec.kind == "file") {
    base = load_profile(spec.path);
    if (base.cells() != cells) base = resample(base, cells);
  } else {
    fail(ErrorCode::kConfiguration, "unknown profile kind '" + spec.kind + "'");
  }
  if (spec.atom == 0.0) return base;
  return MacroProfile(base.atom_mass() + spec.atom,
                      std::vector<double>(base.density().begin(), base.density().end()));
}

void validate(const ExperimentConfig& cfg) {
  require(cfg.mode == "hydro" || cfg.mode == "approx", ErrorCode::kConfiguration,
          "mode must be hydro or approx");
  require(cfg.j >= 0.0 && cfg.t > 0.0, ErrorCode::kConfiguration, "need j >= 0 and t > 0");
  require(!cfg.n_values.empty(), ErrorCode::kConfiguration, "n_values is empty");
  for (std::size_t i = 0; i < cfg.n_values.size(); ++i) {
    require(cfg.n_values[i] >= 2, ErrorCode::kConfiguration, "every N must be >= 2");
    require(i == 0 || cfg.n_values[i] > cfg.n_values[i - 1], ErrorCode::kConfiguration,
            "n_values must be ascending");
  }
  require(!cfg.depths.empty(), ErrorCode::kConfiguration, "depths is empty");
  for (int d : cfg.depths) require(d >= 1, ErrorCode::kConfiguration, "depths must be >= 1");
  require(cfg.replicas >= 1, ErrorCode::kConfiguration, "replicas must be >= 1");
  require(cfg.grid_cells >= 1, ErrorCode::kConfiguration, "grid_cells must be >= 1");
  require(cfg.delta > 0.0 && cfg.blocks >= 0, ErrorCode::kConfiguration,
          "need delta > 0 and blocks >= 0");
}

namespace {

json profile_spec_json(const ProfileSpec& p) {
  json j{{"kind", p.kind}, {"atom", p.atom}};
  if (p.kind == "constant") j["value"] = p.value;
  if (p.kind == "with-edge") {
    j["value"] = p.value;
    j["edge"] = p.edge;
  }
  if (p.kind == "piecewise") {
    j["breaks"] = p.breaks;
    j["values"] = p.values;
  }
  if (p.kind == "file") j["path"] = p.path;
  return j;
}

json config_json(const ExperimentConfig& c) {
  return json{{"mode", c.mode},         {"profile", profile_spec_json(c.profile)},
              {"j", c.j},               {"t", c.t},
              {"n_values", c.n_values}, {"depths", c.depths},
              {"replicas", c.replicas}, {"seed", c.seed},
              {"grid_cells", c.grid_cells}, {"out_dir", c.out_dir},
              {"delta", c.delta},       {"blocks", c.blocks}};
}

json estimate_json(const MonteCarloEstimate& e) {
  return json{{"mean", e.mean}, {"std_error", e.std_error}, {"batch_means", e.batch_means}};
}

std::string hex(std::uint64_t hash) {
  std::ostringstream os;
  os << std::hex << hash;
  return os.str();
}

json provenance(std::uint64_t hash, const ExperimentConfig* cfg) {
  json j{{"version", library_version()}, {"config_hash", hex(hash)}};
  if (cfg != nullptr) j["seed"] = cfg->seed;
  return j;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

template <typename T>
T field(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    fail(ErrorCode::kConfiguration, std::string("config field '") + key + "' has the wrong type");
  }
}

}  // namespace

ProfileSpec profile_spec_from_json(const std::string& text) {
  json p;
  try {
    p = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kConfiguration, std::string("profile spec does not parse: ") + e.what());
  }
  require(p.is_object(), ErrorCode::kConfiguration, "profile spec must be a JSON object");
  ProfileSpec spec;
  spec.kind = field(p, "kind", spec.kind);
  spec.value = field(p, "value", spec.value);
  spec.atom = field(p, "atom", spec.atom);
  spec.edge = field(p, "edge", spec.edge);
  spec.breaks = field(p, "breaks", spec.breaks);
  spec.values = field(p, "values", spec.values);
  spec.path = field(p, "path", spec.path);
  return spec;
}

MacroProfile profile_from_any_json(const std::string& text, std::size_t cells) {
  json p;
  try {
    p = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kInvalidArgument, std::string("profile JSON does not parse: ") + e.what());
  }
  if (p.is_object() && p.contains("densities")) return profile_from_json(text);
  return build_profile(profile_spec_from_json(text), cells);
}

ExperimentConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kConfiguration, std::string("config JSON does not parse: ") + e.what());
  }
  require(j.is_object(), ErrorCode::kConfiguration, "config must be a JSON object");
  require(j.contains("seed"), ErrorCode::kConfiguration, "config must set \"seed\" explicitly");
  ExperimentConfig c;
  c.mode = field(j, "mode", c.mode);
  c.j = field(j, "j", c.j);
  c.t = field(j, "t", c.t);
  c.n_values = field(j, "n_values", c.n_values);
  c.depths = field(j, "depths", c.depths);
  c.replicas = field(j, "replicas", c.replicas);
  c.seed = field(j, "seed", c.seed);
  c.grid_cells = field(j, "grid_cells", c.grid_cells);
  c.out_dir = field(j, "out_dir", c.out_dir);
  c.delta = field(j, "delta", c.delta);
  c.blocks = field(j, "blocks", c.blocks);
  if (j.contains("profile")) {
    require(j["profile"].is_object(), ErrorCode::kConfiguration, "profile must be an object");
    c.profile = profile_spec_from_json(j["profile"].dump());
  }
  validate(c);
  return c;
}

std::string config_to_json(const ExperimentConfig& cfg) { return config_json(cfg).dump(); }

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  json j = config_json(cfg);
  j.erase("out_dir");  // where results land does not change them
  return fnv1a(j.dump());
}

int worker_count() {
  if (const char* env = std::getenv("CURRES_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const auto workers = static_cast<std::size_t>(worker_count());
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, count); ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

MonteCarloEstimate batch_estimate(const std::vector<double>& samples, int batches) {
  require(!samples.empty(), ErrorCode::kInvalidArgument, "no samples");
  MonteCarloEstimate est;
  double sum = 0.0;
  for (double s : samples) sum += s;
  est.mean = sum / static_cast<double>(samples.size());
  const auto b = static_cast<std::size_t>(std::max(1, batches));
  const std::size_t per = samples.size() / b;
  if (per == 0 || b < 2) return est;
  for (std::size_t k = 0; k < b; ++k) {
    double s = 0.0;
    for (std::size_t i = k * per; i < (k + 1) * per; ++i) s += samples[i];
    est.batch_means.push_back(s / static_cast<double>(per));
  }
  double mean_of_batches = 0.0;
  for (double m : est.batch_means) mean_of_batches += m;
  mean_of_batches /= static_cast<double>(b);
  double var = 0.0;
  for (double m : est.batch_means) var += (m - mean_of_batches) * (m - mean_of_batches);
  var /= static_cast<double>(b - 1);
  est.std_error = std::sqrt(var / static_cast<double>(b));
  return est;
}

bool decreasing_within_error(const std::vector<MonteCarloEstimate>& seq) {
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const double allowance = 2.0 * std::hypot(seq[i].std_error, seq[i + 1].std_error);
    if (seq[i + 1].mean - seq[i].mean > allowance) return false;
  }
  return true;
}

namespace {

// Interface distance on lattice sites: max_x |eps F_eps(x; xi) - F(eps x; v)|.
double interface_distance(const Configuration& xi, const MacroProfile& v) {
  const long n = xi.lattice_size();
  const double eps = 1.0 / static_cast<double>(n);
  const auto micro = empirical_interface(xi, eps);
  double d = 0.0;
  for (long x = 0; x <= n; ++x) {
    const double r = std::min(1.0, eps * static_cast<double>(x));
    d = std::max(d, std::abs(micro[static_cast<std::size_t>(x)] - tail_mass(v, r)));
  }
  return d;
}

double cosine_moment(const MacroProfile& v) {
  constexpr double pi = std::numbers::pi;
  const double h = v.cell_width();
  double s = v.atom_mass();
  for (std::size_t k = 0; k < v.cells(); ++k) {
    s += v.density()[k] * (std::sin(pi * (k + 1) * h) - std::sin(pi * k * h)) / pi;
  }
  return s;
}

double cosine_moment(const Configuration& xi) {
  const double eps = 1.0 / static_cast<double>(xi.lattice_size());
  double s = 0.0;
  for (long x = 0; x <= xi.lattice_size(); ++x) {
    s += xi.at(x) * std::cos(std::numbers::pi * eps * static_cast<double>(x));
  }
  return eps * s;
}

std::uint64_t lattice_seed(std::uint64_t base, long n) {
  return mix64(base ^ mix64(static_cast<std::uint64_t>(n) * 0x9E3779B97F4A7C15ull));
}

}  // namespace

HydroReport hydro_compare(const ExperimentConfig& cfg) {
  validate(cfg);
  HydroReport report;
  report.config = cfg;
  report.hash = config_hash(cfg);
  const MacroProfile u = build_profile(cfg.profile, cfg.grid_cells);
  const int depth = *std::max_element(cfg.depths.begin(), cfg.depths.end());
  if (cfg.j == 0.0) {
    report.psi = HeatSemigroup(cfg.t, u.cells()).apply(u);
    report.psi_certified = true;
  } else {
    const SeparatingElement se = separating_element(u, cfg.j, cfg.t, depth, 0.0);
    report.psi = se.profile;
    report.psi_gap = se.achieved_gap;
    report.psi_depth = se.refinement_depth;
    report.psi_certified = se.bracket_certified;
  }
  std::vector<MonteCarloEstimate> trend;
  for (long n : cfg.n_values) {
    const SimParams params(n, cfg.j, cfg.seed, cfg.t);
    const Configuration xi0 = sample_initial(u, params);
    const auto replicas = static_cast<std::size_t>(cfg.replicas);
    std::vector<double> dist(replicas);
    std::vector<double> field(replicas);
    const double target_moment = cosine_moment(report.psi);
    const std::uint64_t base = lattice_seed(cfg.seed, n);
    parallel_for(replicas, [&](std::size_t r) {
      const ClockBundle clocks(replica_seed(base, r), cfg.j, params.eps());
      const Configuration xi = step_true(xi0, clocks, 0.0, params.micro_horizon());
      dist[r] = interface_distance(xi, report.psi);
      field[r] = std::abs(cosine_moment(xi) - target_moment);
    });
    HydroRow row;
    row.n = n;
    row.distance = batch_estimate(dist);
    row.density_field = batch_estimate(field);
    row.initial_block_deviation = initial_fidelity(xi0, u, params).block_deviation;
    trend.push_back(row.distance);
    report.rows.push_back(std::move(row));
  }
  report.decreasing = decreasing_within_error(trend);
  return report;
}

std::string hydro_report_json(const HydroReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"n", r.n},
                    {"distance", estimate_json(r.distance)},
                    {"density_field", estimate_json(r.density_field)},
                    {"initial_block_deviation", r.initial_block_deviation}});
  }
  json j{{"kind", "hydro"},
         {"provenance", provenance(report.hash, &report.config)},
         {"config", config_json(report.config)},
         {"psi", {{"gap", report.psi_gap},
                  {"depth", report.psi_depth},
                  {"bracket_certified", report.psi_certified}}},
         {"rows", rows},
         {"decreasing_within_2se", report.decreasing}};
  return j.dump(2);
}

ApproxReport approx_process_compare(const ExperimentConfig& cfg) {
  validate(cfg);
  ApproxReport report;
  report.config = cfg;
  report.hash = config_hash(cfg);
  const MacroProfile u = build_profile(cfg.profile, cfg.grid_cells);
  const MacroProfile lower =
      barrier_evolve(u, BarrierSide::kLower, cfg.j, cfg.delta, cfg.blocks);
  const MacroProfile upper =
      barrier_evolve(u, BarrierSide::kUpper, cfg.j, cfg.delta, cfg.blocks);
  std::vector<MonteCarloEstimate> minus_trend;
  std::vector<MonteCarloEstimate> plus_trend;
  for (long n : cfg.n_values) {
    const SimParams params(n, cfg.j, cfg.seed, cfg.t);
    const Configuration xi0 = sample_initial(u, params);
    const auto replicas = static_cast<std::size_t>(cfg.replicas);
    std::vector<double> minus(replicas);
    std::vector<double> plus(replicas);
    const std::uint64_t base = lattice_seed(cfg.seed, n);
    parallel_for(replicas, [&](std::size_t r) {
      const ClockBundle clocks(replica_seed(base, r), cfg.j, params.eps());
      DeltaProcess lo(xi0, clocks, DeltaSide::kMinus, cfg.j, cfg.delta);
      lo.run_blocks(cfg.blocks);
      minus[r] = interface_distance(lo.config(), lower);
      DeltaProcess hi(xi0, clocks, DeltaSide::kPlus, cfg.j, cfg.delta);
      hi.run_blocks(cfg.blocks);
      plus[r] = interface_distance(hi.config(), upper);
    });
    ApproxRow row;
    row.n = n;
    row.minus = batch_estimate(minus);
    row.plus = batch_estimate(plus);
    row.initial = interface_distance(xi0, u);
    const DiscreteScheme scheme =
        discrete_evolution(discrete_scheme_from_profile(u, n, cfg.j, cfg.delta), cfg.blocks);
    const auto tail = scaled_lattice_tail(scheme.last(), scheme.eps);
    for (long x = 0; x <= n; ++x) {
      const double r = std::min(1.0, scheme.eps * static_cast<double>(x));
      row.discrete = std::max(row.discrete,
                              std::abs(tail[static_cast<std::size_t>(x)] - tail_mass(lower, r)));
    }
    minus_trend.push_back(row.minus);
    plus_trend.push_back(row.plus);
    report.rows.push_back(std::move(row));
  }
  report.minus_decreasing = decreasing_within_error(minus_trend);
  report.plus_decreasing = decreasing_within_error(plus_trend);
  return report;
}

std::string approx_report_json(const ApproxReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"n", r.n},
                    {"minus", estimate_json(r.minus)},
                    {"plus", estimate_json(r.plus)},
                    {"discrete_scheme", r.discrete},
                    {"initial", r.initial}});
  }
  json j{{"kind", "approx"},
         {"provenance", provenance(report.hash, &report.config)},
         {"config", config_json(report.config)},
         {"rows", rows},
         {"minus_decreasing_within_2se", report.minus_decreasing},
         {"plus_decreasing_within_2se", report.plus_decreasing}};
  return j.dump(2);
}

std::string run_compare(const std::string& config_json_text) {
  const ExperimentConfig cfg = config_from_json(config_json_text);
  std::string out;
  if (cfg.mode == "hydro") {
    const HydroReport report = hydro_compare(cfg);
    out = hydro_report_json(report);
    if (!cfg.out_dir.empty()) {
      save_profile(cfg.out_dir + "/psi.json", report.psi);
      write_text_file(cfg.out_dir + "/psi.csv", profile_to_csv(report.psi));
    }
  } else {
    out = approx_report_json(approx_process_compare(cfg));
  }
  if (!cfg.out_dir.empty()) write_text_file(cfg.out_dir + "/report.json", out);
  return out;
}

std::string run_simulate(const MacroProfile& u, long n, double j, double t, long replicas,
                         std::uint64_t seed, const std::string& out_dir) {
  require(replicas >= 1, ErrorCode::kInvalidArgument, "replicas must be >= 1");
  const SimParams params(n, j, seed, t);
  const Configuration xi0 = sample_initial(u, params);
  const auto count = static_cast<std::size_t>(replicas);
  std::vector<Configuration> finals(count, Configuration(n));
  std::vector<SimStats> stats(count);
  parallel_for(count, [&](std::size_t r) {
    const ClockBundle clocks(replica_seed(seed, r), j, params.eps());
    finals[r] = step_true(xi0, clocks, 0.0, params.micro_horizon(), &stats[r]);
  });
  std::vector<double> mean_interface(static_cast<std::size_t>(n + 1), 0.0);
  json counts = json::array();
  double mean_count = 0.0;
  for (std::size_t r = 0; r < count; ++r) {
    const auto iface = empirical_interface(finals[r], params.eps());
    for (std::size_t x = 0; x < iface.size(); ++x) {
      mean_interface[x] += iface[x] / static_cast<double>(count);
    }
    mean_count += static_cast<double>(finals[r].count()) / static_cast<double>(count);
    counts.push_back({{"replica", r},
                      {"seed", replica_seed(seed, r)},
                      {"initial_count", xi0.count()},
                      {"final_count", finals[r].count()},
                      {"births", stats[r].births},
                      {"deaths", stats[r].deaths},
                      {"aborted_deaths", stats[r].aborted_deaths},
                      {"walk_events", stats[r].walk_events}});
    if (!out_dir.empty()) {
      std::ostringstream csv;
      csv.precision(17);
      csv << "x,eps_F\n";
      for (std::size_t x = 0; x < iface.size(); ++x) csv << x << "," << iface[x] << "\n";
      char name[64];
      std::snprintf(name, sizeof(name), "/replica_%05zu.csv", r);
      write_text_file(out_dir + name, csv.str());
    }
  }
  const std::string args = json{{"n", n}, {"j", j}, {"t", t}, {"replicas", replicas},
                                {"seed", seed}, {"profile", profile_to_json(u)}}.dump();
  json report{{"kind", "simulate"},
              {"provenance", {{"version", library_version()}, {"seed", seed},
                              {"config_hash", hex(fnv1a(args))}}},
              {"n", n}, {"j", j}, {"t", t}, {"replicas", replicas},
              {"initial_count", xi0.count()},
              {"mean_final_count", mean_count},
              {"mean_interface", mean_interface}};
  if (!out_dir.empty()) {
    write_text_file(out_dir + "/counts.json", counts.dump(2));
    write_text_file(out_dir + "/report.json", report.dump(2));
  }
  return report.dump(2);
}

std::string run_barriers(const MacroProfile& u, double j, double t, int depth,
                         const std::string& out_dir) {
  const BarrierLadder ladder = barrier_ladder(u, j, t, {depth, 0.0, 0.0});
  json levels = json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "n,delta,gap,mass_error\n";
  for (std::size_t i = 0; i < ladder.levels.size(); ++i) {
    const int n = ladder.levels[i];
    levels.push_back({{"n", n}, {"delta", ladder.deltas[i]}, {"gap", ladder.gaps[i]},
                      {"mass_error", ladder.mass_errors[i]}});
    csv << n << "," << ladder.deltas[i] << "," << ladder.gaps[i] << ","
        << ladder.mass_errors[i] << "\n";
    if (!out_dir.empty()) {
      save_profile(out_dir + "/lower_" + std::to_string(n) + ".json", ladder.lowers[i]);
      save_profile(out_dir + "/upper_" + std::to_string(n) + ".json", ladder.uppers[i]);
    }
  }
  const MacroProfile& psi = ladder.uppers.back();
  const std::string args = json{{"j", j}, {"t", t}, {"depth", depth},
                                {"profile", profile_to_json(u)}}.dump();
  json report{{"kind", "barriers"},
              {"provenance", {{"version", library_version()}, {"config_hash", hex(fnv1a(args))}}},
              {"j", j}, {"t", t}, {"depth", depth}, {"grid_cells", u.cells()},
              {"levels", levels}};
  if (!out_dir.empty()) {
    write_text_file(out_dir + "/ladder.csv", csv.str());
    save_profile(out_dir + "/psi.json", psi);
    write_text_file(out_dir + "/psi.csv", profile_to_csv(psi));
    write_text_file(out_dir + "/report.json", report.dump(2));
  }
  return report.dump(2);
}

std::string run_separate(const MacroProfile& u, double j, double t, int depth, double gap_tol,
                         double tau, const std::string& out_dir) {
  const SeparatingElement se = separating_element(u, j, t, depth, gap_tol, tau);
  const std::string args = json{{"j", j}, {"t", t}, {"depth", depth}, {"gap_tol", gap_tol},
                                {"tau", tau}, {"profile", profile_to_json(u)}}.dump();
  json report{{"kind", "separate"},
              {"provenance", {{"version", library_version()}, {"config_hash", hex(fnv1a(args))}}},
              {"time", se.time},
              {"achieved_gap", se.achieved_gap},
              {"refinement_depth", se.refinement_depth},
              {"flagged", se.flagged},
              {"bracket_certified", se.bracket_certified},
              {"bracket", {{"lower", json::parse(profile_to_json(se.ladder.lowers.back()))},
                           {"upper", json::parse(profile_to_json(se.ladder.uppers.back()))}}},
              {"psi", json::parse(profile_to_json(se.profile))}};
  if (!out_dir.empty()) {
    save_profile(out_dir + "/psi.json", se.profile);
    write_text_file(out_dir + "/psi.csv", profile_to_csv(se.profile));
    write_text_file(out_dir + "/report.json", report.dump(2));
  }
  return report.dump(2);
}

std::string run_couple(const MacroProfile& u, long n, double j, double delta, double delta_fine,
                       double t, long samples, std::uint64_t seed) {
  require(samples >= 1, ErrorCode::kInvalidArgument, "samples must be >= 1");
  const double ratio = t / delta;
  const long blocks = std::lround(ratio);
  require(blocks >= 1 && std::abs(ratio - static_cast<double>(blocks)) < 1e-9 * ratio,
          ErrorCode::kInvalidArgument, "t must be a positive multiple of delta");
  const SimParams params(n, j, seed, t);
  const OrderedConfig x0 = to_ordered(sample_initial(u, params));
  const auto count = static_cast<std::size_t>(samples);
  std::vector<SandwichReport> reports(count);
  parallel_for(count, [&](std::size_t s) {
    const ClockBundle clocks(replica_seed(seed, s), j, params.eps());
    reports[s] = verify_sandwich(x0, clocks, delta, delta_fine, blocks);
  });
  json violations = json::array();
  json first = nullptr;
  long comparisons = 0;
  for (std::size_t s = 0; s < count; ++s) {
    comparisons += reports[s].comparisons;
    for (const auto& v : reports[s].violations) {
      json item{{"sample", s}, {"seed", replica_seed(seed, s)}, {"block", v.block},
                {"pair", v.pair}, {"detail", v.detail}};
      if (first.is_null()) first = item;
      violations.push_back(std::move(item));
    }
  }
  const std::string args = json{{"n", n}, {"j", j}, {"delta", delta},
                                {"delta_fine", delta_fine}, {"t", t}, {"samples", samples},
                                {"seed", seed}, {"profile", profile_to_json(u)}}.dump();
  json report{{"kind", "couple"},
              {"provenance", {{"version", library_version()}, {"seed", seed},
                              {"config_hash", hex(fnv1a(args))}}},
              {"samples", samples},
              {"blocks", blocks},
              {"comparisons", comparisons},
              {"violations", violations},
              {"first_violation", first}};
  return report.dump(2);
}

}  // namespace curres
