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

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <random>

#include "curres/error.hpp"
#include "curres/lattice.hpp"
#include "curres/particles.hpp"
#include "doctest.h"

using namespace curres;

namespace {

// Straightforward replay of the time-ordered event product, one event at a
// time from a global queue. Reference for the optimized simulator.
Configuration replay_true(const Configuration& xi0, const ClockBundle& clocks, double until) {
  const long n = xi0.lattice_size();
  std::map<std::uint32_t, long> pos;
  std::uint32_t next_label = 1;
  for (long x = n; x >= 0; --x) {
    for (int k = 0; k < xi0.at(x); ++k) pos[next_label++] = x;
  }
  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  std::map<std::uint32_t, ClockCursor> cursor;
  auto schedule = [&](std::uint32_t label, double origin) {
    cursor[label] = clocks.start(label, origin);
    queue.emplace(cursor[label].time, label);
  };
  schedule(0, 0.0);
  for (const auto& [label, x] : pos) schedule(label, 0.0);
  while (!queue.empty() && queue.top().first <= until) {
    const auto [time, label] = queue.top();
    queue.pop();
    ClockCursor& c = cursor[label];
    if (label == 0) {
      if (c.mark > 0) {
        pos[next_label] = 0;
        schedule(next_label++, time);
      } else if (!pos.empty()) {
        auto victim = pos.begin();
        for (auto it = pos.begin(); it != pos.end(); ++it) {
          if (it->second > victim->second) victim = it;
        }
        pos.erase(victim);
      }
    } else if (auto it = pos.find(label); it != pos.end()) {
      const long to = it->second + c.mark;
      if (to >= 0 && to <= n) it->second = to;
    }
    if (label == 0 || pos.count(label) != 0) {
      clocks.advance(c);
      queue.emplace(c.time, label);
    }
  }
  Configuration out(n);
  for (const auto& [label, x] : pos) out.add(x);
  return out;
}

}  // namespace

TEST_CASE("initial sampling") {
  const SimParams p(100, 0.5, 1, 0.1);
  const Configuration xi = sample_initial(MacroProfile::uniform(512, 1.0), p);
  CHECK(xi.lattice_size() == 100);
  CHECK(xi.count() == 100);
  CHECK(initial_fidelity(xi, MacroProfile::uniform(512, 1.0), p).block_deviation <=
        std::pow(p.eps(), p.constants.a));

  const std::vector<double> breaks{0.0, 0.5, 1.0};
  const std::vector<double> values{1.0, 0.0};
  const MacroProfile half = MacroProfile::piecewise(512, breaks, values);
  const SimParams q(400, 0.5, 1, 0.1);
  const Configuration eh = sample_initial(half, q);
  REQUIRE(eh.edge().has_value());
  CHECK(std::abs(q.eps() * static_cast<double>(*eh.edge()) - 0.5) <=
        std::pow(q.eps(), q.constants.a));

  const Configuration empty = sample_initial(MacroProfile::uniform(64, 0.0), p);
  CHECK(empty.count() == 0);
  CHECK_FALSE(empty.edge().has_value());
}

TEST_CASE("sampling refuses configurations outside the assumption") {
  // With a = 1/20 the tolerance eps^a is close to 1 at any desk-scale N, so
  // tighten it to reach the failure path.
  const std::vector<double> breaks{0.0, 0.5, 0.9, 1.0};
  const std::vector<double> values{1.0, 1e-3, 0.0};
  const MacroProfile faint_tail = MacroProfile::piecewise(1000, breaks, values);
  SimParams p(100, 0.5, 1, 0.1);
  CHECK_NOTHROW((void)sample_initial(faint_tail, p));
  p.constants.a = 0.5;
  try {
    (void)sample_initial(faint_tail, p);
    FAIL("expected kAssumptionViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kAssumptionViolated);
  }
}

TEST_CASE("empirical interface") {
  const Configuration empty(10);
  for (double v : empirical_interface(empty, 0.1)) CHECK(v == 0.0);
  Configuration one(10);
  one.add(3);
  const auto f = empirical_interface(one, 0.1);
  for (long x = 0; x <= 10; ++x) CHECK(f[x] == doctest::Approx(x <= 3 ? 0.1 : 0.0));
}

TEST_CASE("simulator agrees with a direct replay of the clocks") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Configuration xi(12);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> site(0, 12);
    for (int k = 0; k < static_cast<int>(seed % 7); ++k) xi.add(site(rng));
    // A large current so that births and deaths both happen often.
    const ClockBundle clocks(seed, 5.0, 1.0 / 12.0);
    const double until = 40.0;
    CHECK(step_true(xi, clocks, 0.0, until) == replay_true(xi, clocks, until));
  }
}

TEST_CASE("single walker follows its own clock with suppression at the ends") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ClockBundle clocks(seed, 0.0, 0.1);
    for (long start : {0L, 5L, 10L}) {
      Configuration xi(10);
      xi.add(start);
      long x = start;
      ClockCursor c = clocks.start(1, 0.0);
      for (; c.time <= 25.0; clocks.advance(c)) {
        if (x + c.mark >= 0 && x + c.mark <= 10) x += c.mark;
      }
      const Configuration out = step_true(xi, clocks, 0.0, 25.0);
      CHECK(out.at(x) == 1);
    }
  }
}

TEST_CASE("deaths on an empty system abort") {
  SimStats stats;
  const ClockBundle clocks(3, 0.5, 0.1);
  const Configuration out = step_free(Configuration(10), clocks, 0.0, 500.0);
  CHECK(out.count() == 0);
  const auto events = reservoir_events(clocks, 0.0, 500.0);
  const CountPath path = particle_count_path(0, events);
  const Configuration full = step_true(Configuration(10), clocks, 0.0, 500.0, &stats);
  CHECK(full.count() == (path.values.empty() ? 0 : path.values.back()));
  CHECK(stats.births - stats.deaths == static_cast<std::uint64_t>(full.count()));
}

TEST_CASE("free evolution conserves particles and is deterministic") {
  const Configuration xi = sample_initial(MacroProfile::uniform(64, 1.0), SimParams(50, 0.5, 1, 0.1));
  const ClockBundle clocks(99, 0.5, 0.02);
  const Configuration a = step_free(xi, clocks, 0.0, 300.0);
  CHECK(a.count() == xi.count());
  CHECK(a == step_free(xi, clocks, 0.0, 300.0));
  CHECK(step_true(xi, clocks, 0.0, 300.0) == step_true(xi, clocks, 0.0, 300.0));
}

TEST_CASE("free mean profile matches the random-walk kernel") {
  const long n = 20;
  Configuration xi(n);
  xi.add(2, 3);
  xi.add(15, 2);
  const double t = 40.0;
  const int replicas = 10000;
  std::vector<double> mean(n + 1, 0.0);
  std::vector<double> sq(n + 1, 0.0);
  for (int r = 0; r < replicas; ++r) {
    const Configuration out = step_free(xi, ClockBundle(replica_seed(5, r), 0.0, 0.05), 0.0, t);
    for (long x = 0; x <= n; ++x) {
      mean[x] += out.at(x);
      sq[x] += out.at(x) * out.at(x);
    }
  }
  const auto w = mean_profile(rw_kernel(n, t), xi.occupations());
  for (long x = 0; x <= n; ++x) {
    const double m = mean[x] / replicas;
    const double se = std::sqrt((sq[x] / replicas - m * m) / replicas);
    CHECK(std::abs(m - w[x]) <= 5.0 * se + 1e-12);
  }
}

TEST_CASE("edge cache survives random updates") {
  std::mt19937_64 rng(17);
  Configuration xi(30);
  std::uniform_int_distribution<long> site(0, 30);
  std::uniform_int_distribution<int> op(0, 3);
  for (int step = 0; step < 20000; ++step) {
    const long x = site(rng);
    switch (op(rng)) {
      case 0: xi.add(x); break;
      case 1: (void)xi.remove(x); break;
      case 2: (void)xi.remove_rightmost(); break;
      default:
        if (xi.at(x) > 0) {
          const long to = std::clamp<long>(x + (rng() & 1 ? 1 : -1), 0, 30);
          xi.move(x, to);
        }
    }
    REQUIRE(xi.edge() == xi.recompute_edge());
  }
}

TEST_CASE("reflected count path") {
  const std::vector<ReservoirEvent> events{{1.0, -1}, {2.0, -1}, {3.0, 1}};
  const CountPath path = particle_count_path(0, events);
  CHECK(path.values == std::vector<long>{0, 0, 1});
}

TEST_CASE("good set on scripted streams") {
  const long n = 10000;
  const double eps = 1.0 / n;
  const double j = 0.5;
  const double delta = 0.1;
  const double block = delta / (eps * eps);
  const long per = std::lround(j * delta / eps);
  std::vector<ReservoirEvent> events;
  for (long k = 0; k < 6; ++k) {
    for (long i = 0; i < 2 * per; ++i) {
      events.push_back({(k + (i + 0.5) / (2.0 * per)) * block, i % 2 == 0 ? 1 : -1});
    }
  }
  CHECK(good_set_check(events, j, delta, eps, 0.5, 1.0 / 20.0));
  std::vector<ReservoirEvent> gap;
  for (const auto& e : events) {
    if (e.time < 2 * block || e.time >= 3 * block) gap.push_back(e);
  }
  CHECK_FALSE(good_set_check(gap, j, delta, eps, 0.5, 1.0 / 20.0));
}

TEST_CASE("batched processes") {
  const Configuration xi = sample_initial(MacroProfile::uniform(64, 1.0), SimParams(40, 0.0, 1, 0.1));
  const double delta = 0.05;
  const double block = delta * 40 * 40;
  const ClockBundle silent(8, 0.0, 1.0 / 40);
  for (DeltaSide side : {DeltaSide::kMinus, DeltaSide::kPlus}) {
    CHECK(step_delta(xi, side, silent, 0, 0.0, delta) == step_free(xi, silent, 0.0, block));
  }
  const ClockBundle clocks(8, 0.5, 1.0 / 40);
  for (long k = 0; k < 5; ++k) {
    const auto events = reservoir_events(clocks, k * block, (k + 1) * block);
    long level = xi.count();
    bool hit_zero = false;
    for (const auto& e : events) {
      level = std::max(0L, level + e.mark);
      hit_zero = hit_zero || level == 0;
    }
    for (DeltaSide side : {DeltaSide::kMinus, DeltaSide::kPlus}) {
      const Configuration out = step_delta(xi, side, clocks, k, 0.5, delta);
      if (!hit_zero) CHECK(out.count() == level);
    }
  }
}
