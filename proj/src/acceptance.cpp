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

#include "curres/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "curres/barrier.hpp"
#include "curres/coupling.hpp"
#include "curres/error.hpp"
#include "curres/harness.hpp"
#include "curres/heat_kernel.hpp"
#include "curres/lattice.hpp"
#include "curres/particles.hpp"
#include "json.hpp"
#include "oracles.hpp"

namespace curres {

namespace {

constexpr std::size_t kGrid = 512;
constexpr std::uint64_t kSeed = 20260915;

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

struct Verdict {
  bool passed;
  std::string detail;
};

// ---- profile_core / barrier_flow -------------------------------------------

Verdict mass_conservation() {
  const MacroProfile u = MacroProfile::uniform(kGrid, 1.0);
  double worst = 0.0;
  for (double delta : {0.1, 0.05, 0.025}) {
    const BarrierStepper stepper(1.0, delta, kGrid);
    const long steps = std::lround(1.0 / delta);
    for (BarrierSide side : {BarrierSide::kLower, BarrierSide::kUpper}) {
      MacroProfile v = u;
      for (long k = 0; k < steps; ++k) {
        v = stepper.step(v, side);
        worst = std::max(worst, std::abs(tail_mass(v, 0.0) - 1.0));
      }
    }
  }
  return {worst <= 1e-8, fmt("max |F(0;S)-1| = %.3e (tol 1e-8)", worst)};
}

Verdict barrier_interleaving() {
  const MacroProfile u = MacroProfile::uniform(kGrid, 1.0);
  const double j = 0.5;
  const MacroProfile lo = barrier_evolve(u, BarrierSide::kLower, j, 0.1, 4);
  const MacroProfile lo_fine = barrier_evolve(u, BarrierSide::kLower, j, 0.05, 8);
  const MacroProfile hi_fine = barrier_evolve(u, BarrierSide::kUpper, j, 0.05, 8);
  const MacroProfile hi = barrier_evolve(u, BarrierSide::kUpper, j, 0.1, 4);
  const CompareOptions cmp{1e-8, true};
  const bool a = leq(lo, lo_fine, cmp);
  const bool b = leq(lo_fine, hi_fine, cmp);
  const bool c = leq(hi_fine, hi, cmp);
  return {a && b && c, fmt("S-(0.1)<=S-(0.05): %d, S-(0.05)<=S+(0.05): %d, S+(0.05)<=S+(0.1): %d",
                           a, b, c)};
}

Verdict gap_bound() {
  const MacroProfile u = MacroProfile::uniform(kGrid, 1.0);
  const double j = 0.2;
  const BarrierLadder ladder = barrier_ladder(u, j, 0.1, {8, 0.0, 0.0});
  double worst_excess = -1.0;
  for (std::size_t i = 0; i < ladder.levels.size(); ++i) {
    worst_excess = std::max(worst_excess, ladder.gaps[i] - 4.0 * j * ladder.deltas[i]);
  }
  const bool full = ladder.levels.size() == 8;
  return {full && worst_excess <= 1e-6,
          fmt("%zu levels, max(gap - 4 j delta) = %.3e (tol 1e-6)", ladder.levels.size(),
              worst_excess)};
}

MacroProfile random_profile(std::mt19937_64& rng, std::size_t cells) {
  std::uniform_real_distribution<double> atom(0.0, 0.5);
  std::uniform_real_distribution<double> level(0.0, 2.0);
  std::uniform_int_distribution<int> pieces(1, 6);
  std::vector<double> breaks{0.0};
  std::vector<double> values;
  const int k = pieces(rng);
  std::vector<double> cuts(static_cast<std::size_t>(k - 1));
  std::uniform_real_distribution<double> where(0.0, 1.0);
  for (auto& c : cuts) c = where(rng);
  std::sort(cuts.begin(), cuts.end());
  breaks.insert(breaks.end(), cuts.begin(), cuts.end());
  breaks.push_back(1.0);
  for (int i = 0; i < k; ++i) values.push_back(level(rng));
  const MacroProfile base = MacroProfile::piecewise(cells, breaks, values);
  return MacroProfile(atom(rng), std::vector<double>(base.density().begin(), base.density().end()));
}

Verdict cut_contraction() {
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> current(0.05, 1.0);
  std::uniform_real_distribution<double> step(0.005, 0.2);
  int tried = 0;
  double worst_pair = -1.0;
  double worst_self = -1.0;
  while (tried < 100) {
    const MacroProfile u = random_profile(rng, 128);
    const MacroProfile v = random_profile(rng, 128);
    const double j = current(rng);
    const double delta = step(rng);
    if (j * delta >= std::min(u.bulk_mass(), v.bulk_mass())) continue;
    ++tried;
    const MacroProfile ku = cut_and_paste(u, j, delta);
    const MacroProfile kv = cut_and_paste(v, j, delta);
    worst_pair = std::max(worst_pair, tv_distance(ku, kv) - tv_distance(u, v));
    worst_self = std::max(worst_self, tv_distance(ku, u) - 2.0 * j * delta);
  }
  return {worst_pair <= 1e-10 && worst_self <= 1e-10,
          fmt("100 pairs: max(|Ku-Kv| - |u-v|) = %.3e, max(|Ku-u| - 2 j delta) = %.3e", worst_pair,
              worst_self)};
}

Verdict no_edge_solution() {
  const MacroProfile u = MacroProfile::uniform(kGrid, 1.0);
  const double j = 0.2;
  const double t = 0.1;
  const SeparatingElement se = separating_element(u, j, t, 8, 0.0);
  const ExplicitSolution ex = explicit_no_edge(u, j, t);
  const double d_quad = sup_density_distance(se.profile, ex.profile);
  const std::vector<double> spectral =
      oracle::explicit_solution_spectral({u.atom_mass(), std::vector<double>(kGrid, 1.0)}, j, t);
  double d_spec = 0.0;
  for (std::size_t k = 0; k < kGrid; ++k) {
    d_spec = std::max(d_spec, std::abs(se.profile.density()[k] - spectral[k]));
  }
  const double mid = std::abs(explicit_no_edge_at(u, j, t, 0.5) - 1.0);
  return {!ex.edge_formed && d_quad <= 1e-2 && d_spec <= 1e-2 && mid <= 1e-6,
          fmt("sup|psi - quadrature| = %.3e, sup|psi - spectral| = %.3e (tol 1e-2), "
              "|rho(1/2,t) - 1| = %.3e (tol 1e-6)",
              d_quad, d_spec, mid)};
}

Verdict tau_independence() {
  const MacroProfile u = MacroProfile::uniform(kGrid, 1.0);
  const double j = 0.5;
  const double t = 0.3;
  const SeparatingElement a = separating_element(u, j, t, 6, 0.0, t);
  const SeparatingElement b = separating_element(u, j, t, 6, 0.0, 2.0 * t / 3.0);
  const double d = sup_tail_distance(a.profile, b.profile);
  const double allowance = a.achieved_gap + b.achieved_gap;
  return {d <= allowance,
          fmt("sup|F(psi_t) - F(psi_2t/3)| = %.3e, gap sum = %.3e", d, allowance)};
}

Verdict long_time_profile() {
  const double mass = 0.5;
  const double j = 0.3;
  const MacroProfile u = MacroProfile::uniform(kGrid, mass);
  const SeparatingElement se = separating_element(u, j, 5.0, 6, 0.0, 0.125);
  double d_edge = 0.0;
  double d_stat = 0.0;
  for (std::size_t k = 0; k < kGrid; ++k) {
    const double r = (static_cast<double>(k) + 0.5) / static_cast<double>(kGrid);
    const double rho = se.profile.density()[k];
    d_edge = std::max(d_edge, std::abs(rho - oracle::edge_linear_density(mass, j, r)));
    d_stat = std::max(d_stat, std::abs(rho - oracle::stationary_density(mass, j, r)));
  }
  return {d_edge <= 0.05,
          fmt("sup|psi - max(2j(R-r),0)| = %.4f (tol 0.05); sup|psi - stationary| = %.4f, "
              "gap %.3e at delta %.3e",
              d_edge, d_stat, se.achieved_gap, se.ladder.deltas.back())};
}

// ---- heat_kernel / lattice -------------------------------------------------

Verdict kernel_correctness() {
  double worst = 0.0;
  for (double t : {0.01, 0.1, 1.0}) {
    for (int a = 0; a < 20; ++a) {
      for (int b = 0; b < 20; ++b) {
        const double r = (a + 0.5) / 20.0;
        const double rp = b / 19.0;
        worst = std::max(worst, std::abs(kernel_value(t, r, rp) -
                                         oracle::neumann_kernel_spectral(t, r, rp)));
      }
    }
  }
  double worst_rw = 0.0;
  for (double t : {0.5, 3.7, 40.0}) {
    const Eigen::MatrixXd diff = rw_kernel(20, t) - oracle::rw_kernel_uniformization(20, t);
    worst_rw = std::max(worst_rw, diff.cwiseAbs().maxCoeff());
  }
  return {worst < 1e-10 && worst_rw < 1e-10,
          fmt("image sum vs spectral: %.3e; rw_kernel vs uniformization: %.3e (tol 1e-10)", worst,
              worst_rw)};
}

// E[D(xi_t, x)] for at most two walkers from the kernel alone: the free
// walks are independent, so the factorial moments factor over particles.
double duality_moment(const Eigen::MatrixXd& p, std::span<const int> occ,
                      std::span<const int> walkers) {
  const auto n = static_cast<Eigen::Index>(occ.size());
  if (walkers.empty()) return 1.0;
  if (walkers.size() == 1) {
    double s = 0.0;
    for (Eigen::Index y = 0; y < n; ++y) s += p(y, walkers[0]) * occ[static_cast<std::size_t>(y)];
    return s;
  }
  double s = 0.0;
  for (Eigen::Index y = 0; y < n; ++y) {
    for (Eigen::Index z = 0; z < n; ++z) {
      const double pairs = y == z ? occ[static_cast<std::size_t>(y)] *
                                        (occ[static_cast<std::size_t>(y)] - 1.0)
                                  : occ[static_cast<std::size_t>(y)] *
                                        static_cast<double>(occ[static_cast<std::size_t>(z)]);
      s += p(y, walkers[0]) * p(z, walkers[1]) * pairs;
    }
  }
  return s;
}

Verdict duality_identity() {
  std::mt19937_64 rng(kSeed + 11);
  double worst = 0.0;
  double worst_oracle = 0.0;
  for (int c = 0; c < 20; ++c) {
    const long n = 1 + c % kDualityMaxSites;
    std::uniform_int_distribution<long> site(0, n);
    std::vector<int> occ(static_cast<std::size_t>(n + 1), 0);
    const int particles = 1 + (c / 4) % kDualityMaxParticles;
    for (int k = 0; k < particles; ++k) ++occ[static_cast<std::size_t>(site(rng))];
    std::vector<int> walkers;
    const int w = 1 + c % kDualityMaxWalkers;
    for (int k = 0; k < w; ++k) walkers.push_back(static_cast<int>(site(rng)));
    const double t = 0.25 * (1 + c % 7);
    const DualityResult res = duality_check(occ, walkers, t);
    const double ref = duality_moment(oracle::rw_kernel_uniformization(n, t), occ, walkers);
    worst = std::max(worst, std::abs(res.lhs - res.rhs));
    worst_oracle =
        std::max(worst_oracle, std::max(std::abs(res.lhs - ref), std::abs(res.rhs - ref)));
  }
  return {worst < 1e-8 && worst_oracle < 1e-8,
          fmt("20 cases: max|lhs - rhs| = %.3e, max deviation from moment oracle = %.3e", worst,
              worst_oracle)};
}

// ---- particle_sim ----------------------------------------------------------

Verdict count_law() {
  const long n = 100;
  const double j = 0.5;
  const double t = 0.3;
  ProfileSpec spec;
  spec.kind = "with-edge";
  spec.value = 1.0;
  spec.edge = 0.05;
  const MacroProfile rho = build_profile(spec, 100);
  const SimParams params(n, j, kSeed, t);
  const Configuration xi0 = sample_initial(rho, params);
  const std::size_t samples = 10000;
  std::vector<long> counts(samples);
  parallel_for(samples, [&](std::size_t r) {
    const ClockBundle clocks(replica_seed(kSeed + 9, r), j, params.eps());
    counts[r] = step_true(xi0, clocks, 0.0, params.micro_horizon()).count();
  });
  const long cap = xi0.count() + 200;
  const std::vector<double> law =
      oracle::reflected_count_law(xi0.count(), j * params.eps(), params.micro_horizon(), cap);
  const double ks = oracle::ks_distance(counts, law);
  const double critical = 1.628 / std::sqrt(static_cast<double>(samples));
  return {ks <= critical, fmt("n0 = %ld, KS = %.4f, 1%% critical value %.4f", xi0.count(), ks,
                              critical)};
}

Verdict poisson_counts() {
  const long n = 400;
  const double j = 0.5;
  const double delta = 0.1;
  const double eps = 1.0 / static_cast<double>(n);
  const double block = delta / (eps * eps);
  const long windows = 10000;
  const ClockBundle clocks(kSeed + 10, j, eps);
  const auto events = reservoir_events(clocks, 0.0, block * static_cast<double>(windows));
  const auto blocks = block_counts(0, events, block, windows);
  const double lambda = j * delta / eps;
  double mean = 0.0;
  for (const auto& b : blocks) mean += static_cast<double>(b.plus_marks);
  mean /= static_cast<double>(windows);
  double var = 0.0;
  for (const auto& b : blocks) var += (b.plus_marks - mean) * (b.plus_marks - mean);
  var /= static_cast<double>(windows - 1);
  const double se_mean = std::sqrt(lambda / static_cast<double>(windows));
  const double se_var = std::sqrt((lambda + 2.0 * lambda * lambda) / static_cast<double>(windows));
  const bool moments_ok =
      std::abs(mean - lambda) <= 3.0 * se_mean && std::abs(var - lambda) <= 3.0 * se_var;

  const double horizon_t = 0.5;
  const double gamma = AssumptionConstants{}.gamma;
  const long last_window = std::lround(std::floor(horizon_t / delta + 1e-9));
  const std::size_t samples = 1000;
  std::vector<char> good(samples);
  parallel_for(samples, [&](std::size_t s) {
    const ClockBundle c(replica_seed(kSeed + 12, s), j, eps);
    const auto ev = reservoir_events(c, 0.0, block * static_cast<double>(last_window + 1));
    good[s] = good_set_check(ev, j, delta, eps, horizon_t, gamma) ? 1 : 0;
  });
  const double p_good =
      static_cast<double>(std::count(good.begin(), good.end(), 1)) / static_cast<double>(samples);
  return {moments_ok && p_good >= 0.99,
          fmt("B0 mean %.3f, var %.3f vs %.1f (3 se: %.3f, %.3f); P[G] = %.3f", mean, var, lambda,
              3.0 * se_mean, 3.0 * se_var, p_good)};
}

Verdict hydro_trend() {
  ExperimentConfig cfg;
  cfg.seed = kSeed + 13;
  const HydroReport report = hydro_compare(cfg);
  std::ostringstream os;
  os.precision(4);
  for (const auto& row : report.rows) {
    os << "D(1/" << row.n << ") = " << row.distance.mean << " +- " << row.distance.std_error
       << "; ";
  }
  const double last = report.rows.back().distance.mean;
  os << "decreasing within 2 se: " << (report.decreasing ? "yes" : "no");
  return {report.decreasing && last <= 0.05, os.str()};
}

// ---- coupling_graphical ----------------------------------------------------

// Non-increasing sequences of length <= 3 with values in {0..N+1}.
std::vector<OrderedConfig> small_configs(long n) {
  std::vector<OrderedConfig> out;
  std::vector<long> cur;
  std::function<void(long)> rec = [&](long top) {
    out.emplace_back(n, cur);
    if (cur.size() == 3) return;
    for (long v = top; v >= 0; --v) {
      cur.push_back(v);
      rec(v);
      cur.pop_back();
    }
  };
  rec(n + 1);
  return out;
}

Verdict operator_algebra() {
  long checks = 0;
  long failures = 0;
  std::string first;
  auto expect = [&](bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures++ == 0) first = what;
  };
  auto show = [](const OrderedConfig& x) {
    std::string s = "(";
    for (long v : x.entries()) s += std::to_string(v) + ",";
    return s + ")";
  };
  for (long n = 1; n <= 4; ++n) {
    const auto configs = small_configs(n);
    // Monotonicity of every operator and the one-sided rules for a_0.
    for (const auto& x : configs) {
      for (const auto& y : configs) {
        if (!ordered_leq(x, y)) continue;
        for (std::uint32_t label = 0; label <= 4; ++label) {
          for (int mark : {1, -1}) {
            expect(ordered_leq(apply_operator(x, label, mark), apply_operator(y, label, mark)),
                   "monotone a_" + std::to_string(label) + " on " + show(x) + " <= " + show(y));
          }
        }
        expect(ordered_leq(x, apply_operator(y, 0, 1)), "x <= a0+ y on " + show(x));
        expect(ordered_leq(x, apply_operator(y, 0, -1)), "x <= a0- y on " + show(x));
        if (x.n_active() < y.n_active()) {
          expect(ordered_leq(apply_operator(x, 0, 1), y), "a0+ x <= y on " + show(x));
        }
        if (x.m_exited() < y.m_exited()) {
          expect(ordered_leq(apply_operator(x, 0, -1), y), "a0- x <= y on " + show(x));
        }
      }
    }
    for (const auto& x : configs) {
      // Allowed exchange: moving a_0 after a displacement can only lower.
      for (std::uint32_t i = 1; i <= 4; ++i) {
        for (int s0 : {1, -1}) {
          for (int si : {1, -1}) {
            const OrderedConfig late = apply_operator(apply_operator(x, i, si), 0, s0);
            const OrderedConfig early = apply_operator(apply_operator(x, 0, s0), i, si);
            expect(ordered_leq(late, early), "exchange a_" + std::to_string(i) + " on " + show(x));
          }
        }
      }
      // N and M of a product depend only on its label-0 factors.
      std::vector<std::pair<std::uint32_t, int>> word;
      std::function<void()> rec = [&] {
        OrderedConfig full = x;
        OrderedConfig zero = x;
        for (const auto& [label, mark] : word) {
          full.apply(label, mark);
          if (label == 0) zero.apply(0, mark);
        }
        expect(full.n_active() == zero.n_active() && full.m_exited() == zero.m_exited(),
               "N/M invariance on " + show(x));
        if (word.size() == 3) return;
        for (std::uint32_t label = 0; label <= 3; ++label) {
          for (int mark : {1, -1}) {
            word.emplace_back(label, mark);
            rec();
            word.pop_back();
          }
        }
      };
      rec();
    }
  }
  return {failures == 0, fmt("%ld checks, %ld failures%s%s", checks, failures,
                             failures ? "; first: " : "", first.c_str())};
}

Verdict pathwise_sandwich() {
  const long n = 100;
  const double j = 0.5;
  const double t = 0.6;
  const MacroProfile u = MacroProfile::uniform(kGrid, 1.0);
  const SimParams params(n, j, kSeed + 7, t);
  const OrderedConfig x0 = to_ordered(sample_initial(u, params));
  const std::size_t samples = 200;
  std::vector<SandwichReport> reports(samples);
  parallel_for(samples, [&](std::size_t s) {
    const ClockBundle clocks(replica_seed(kSeed + 7, s), j, params.eps());
    reports[s] = verify_sandwich(x0, clocks, 0.2, 0.05, 3);
  });
  long comparisons = 0;
  long violations = 0;
  std::string first;
  for (std::size_t s = 0; s < samples; ++s) {
    comparisons += reports[s].comparisons;
    for (const auto& v : reports[s].violations) {
      if (violations++ == 0) {
        first = fmt("sample %zu block %ld %s: %s", s, v.block, v.pair.c_str(), v.detail.c_str());
      }
    }
  }
  return {violations == 0, fmt("200 samples, %ld comparisons, %ld violations%s%s", comparisons,
                               violations, violations ? "; first: " : "", first.c_str())};
}

struct Criterion {
  int id;
  const char* name;
  Verdict (*run)();
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {1, "mass conservation", mass_conservation},
      {2, "barrier interleaving", barrier_interleaving},
      {3, "gap bound", gap_bound},
      {4, "cut-and-paste contraction", cut_contraction},
      {5, "no-edge explicit solution", no_edge_solution},
      {6, "tau independence", tau_independence},
      {7, "pathwise sandwich", pathwise_sandwich},
      {8, "operator algebra", operator_algebra},
      {9, "particle count law", count_law},
      {10, "reservoir jump counts", poisson_counts},
      {11, "duality identity", duality_identity},
      {12, "hydrodynamic trend", hydro_trend},
      {13, "long-time linear profile", long_time_profile},
      {14, "kernel correctness", kernel_correctness},
  };
  return list;
}

std::vector<int> suite_members(const std::string& suite) {
  if (suite == "algebra") return {4, 8};
  if (suite == "kernel") return {14};
  if (suite == "barriers") return {1, 2, 3, 5, 6};
  if (suite == "coupling") return {7};
  if (suite == "hydro") return {9, 10, 12};
  if (suite == "duality") return {11};
  if (suite == "longtime") return {13};
  if (suite == "all") {
    std::vector<int> ids;
    for (const auto& c : criteria()) ids.push_back(c.id);
    return ids;
  }
  fail(ErrorCode::kInvalidArgument, "unknown acceptance suite '" + suite + "'");
}

}  // namespace

const std::vector<std::string>& acceptance_suites() {
  static const std::vector<std::string> names{"algebra", "kernel",  "barriers", "coupling",
                                              "hydro",   "duality", "longtime", "all"};
  return names;
}

std::vector<CriterionResult> run_criteria(const std::string& suite) {
  std::vector<CriterionResult> results;
  for (int id : suite_members(suite)) {
    const Criterion& c = criteria()[static_cast<std::size_t>(id - 1)];
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    const auto start = std::chrono::steady_clock::now();
    try {
      const Verdict v = c.run();
      r.passed = v.passed;
      r.detail = v.detail;
    } catch (const Error& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(r));
  }
  return results;
}

std::string acceptance_json(const std::string& suite, const std::vector<CriterionResult>& results) {
  nlohmann::json list = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    list.push_back({{"id", r.id},
                    {"name", r.name},
                    {"passed", r.passed},
                    {"detail", r.detail},
                    {"seconds", r.seconds}});
  }
  return nlohmann::json{{"suite", suite},
                        {"version", library_version()},
                        {"passed", all},
                        {"criteria", list}}
      .dump(2);
}

std::string run_acceptance(const std::string& suite) {
  return acceptance_json(suite, run_criteria(suite));
}

}  // namespace curres
