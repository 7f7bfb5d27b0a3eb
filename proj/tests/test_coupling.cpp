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
#include <random>

#include "curres/coupling.hpp"
#include "curres/particles.hpp"
#include "doctest.h"

using namespace curres;

namespace {

OrderedConfig random_ordered(std::mt19937_64& rng, long n, int max_entries) {
  std::uniform_int_distribution<int> count(0, max_entries);
  std::uniform_int_distribution<long> value(0, n + 1);
  std::vector<long> e(static_cast<std::size_t>(count(rng)));
  for (auto& v : e) v = value(rng);
  std::sort(e.rbegin(), e.rend());
  return OrderedConfig(n, e);
}

// Raises random entries of x, keeping the order: returns some y >= x.
OrderedConfig raise(std::mt19937_64& rng, const OrderedConfig& x, int extra) {
  std::vector<long> e(x.entries().begin(), x.entries().end());
  std::uniform_int_distribution<long> bump(0, 3);
  for (auto& v : e) v = std::min(x.lattice_size() + 1, v + bump(rng));
  for (int k = 0; k < extra; ++k) e.push_back(0);
  std::sort(e.rbegin(), e.rend());
  return OrderedConfig(x.lattice_size(), e);
}

}  // namespace

TEST_CASE("ordered configurations from occupations") {
  const Configuration xi = Configuration::from_occupations({0, 3, 0, 1, 0});
  const OrderedConfig x = to_ordered(xi);
  CHECK(std::vector<long>(x.entries().begin(), x.entries().end()) == std::vector<long>{3, 1, 1, 1});
  CHECK(x.n_active() == 4);
  CHECK(x.m_exited() == 0);
  CHECK(x.at(5) == -1);
  CHECK(from_ordered(x) == xi);
  const OrderedConfig empty = to_ordered(Configuration(6));
  CHECK(empty.n_active() == 0);
  CHECK(empty.at(1) == -1);

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> occ(0, 3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> o(9);
    for (auto& v : o) v = occ(rng);
    const Configuration c = Configuration::from_occupations(o);
    CHECK(from_ordered(to_ordered(c)) == c);
  }
}

TEST_CASE("operators") {
  const OrderedConfig x(6, {5, 3});
  const OrderedConfig born = apply_operator(x, 0, 1);
  CHECK(std::vector<long>(born.entries().begin(), born.entries().end()) ==
        std::vector<long>{5, 3, 0});
  CHECK(born.n_active() == 3);
  const OrderedConfig gone(3, {4, 4});
  CHECK(apply_operator(gone, 0, -1) == gone);
  const OrderedConfig top(3, {3, 1});
  CHECK(apply_operator(top, 1, 1) == top);
  const OrderedConfig run(5, {2, 2, 2});
  const OrderedConfig up = apply_operator(run, 2, 1);
  const OrderedConfig down = apply_operator(run, 2, -1);
  CHECK(std::vector<long>(up.entries().begin(), up.entries().end()) == std::vector<long>{3, 2, 2});
  CHECK(std::vector<long>(down.entries().begin(), down.entries().end()) ==
        std::vector<long>{2, 2, 1});
  const OrderedConfig killed = apply_operator(OrderedConfig(5, {4, 1}), 0, -1);
  CHECK(killed.m_exited() == 1);
  CHECK(killed.at(1) == 6);
}

TEST_CASE("order is componentwise and matches the interface order") {
  const OrderedConfig x = to_ordered(Configuration::from_occupations({0, 1, 1, 0, 0, 0, 0, 0, 1, 1, 0}));
  const OrderedConfig y = to_ordered(Configuration::from_occupations({0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 2}));
  CHECK(ordered_leq(x, y));
  CHECK(ordered_leq(x, x));
  const Configuration a = from_ordered(x);
  const Configuration b = from_ordered(y);
  bool pointwise = true;
  for (long s = 0; s <= 10; ++s) pointwise = pointwise && a.at(s) <= b.at(s);
  CHECK_FALSE(pointwise);

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> occ(0, 2);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<int> o1(8);
    std::vector<int> o2(8);
    for (auto& v : o1) v = occ(rng);
    for (auto& v : o2) v = occ(rng);
    const Configuration c1 = Configuration::from_occupations(o1);
    const Configuration c2 = Configuration::from_occupations(o2);
    CHECK(ordered_leq(to_ordered(c1), to_ordered(c2)) == interface_leq(c1, c2));
  }
}

TEST_CASE("operator monotonicity and allowed exchanges at N = 50") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::uint32_t> label(0, 12);
  for (int trial = 0; trial < 3000; ++trial) {
    const OrderedConfig x = random_ordered(rng, 50, 10);
    const OrderedConfig y = raise(rng, x, trial % 3);
    REQUIRE(ordered_leq(x, y));
    const std::uint32_t i = label(rng);
    for (int mark : {1, -1}) {
      CHECK(ordered_leq(apply_operator(x, i, mark), apply_operator(y, i, mark)));
      CHECK(ordered_leq(x, apply_operator(y, 0, mark)));
      if (i == 0) continue;
      for (int s0 : {1, -1}) {
        CHECK(ordered_leq(apply_operator(apply_operator(x, i, mark), 0, s0),
                          apply_operator(apply_operator(x, 0, s0), i, mark)));
      }
    }
  }
}

TEST_CASE("flows without reservoir events coincide") {
  const OrderedConfig x0 = to_ordered(
      sample_initial(MacroProfile::uniform(64, 1.0), SimParams(30, 0.0, 1, 0.1)));
  const ClockBundle clocks(21, 0.0, 1.0 / 30);
  const double horizon = 0.2 * 900;
  const OrderedConfig ref = flow(x0, clocks, FlowKind::kFree, 0.05, horizon);
  for (FlowKind k : {FlowKind::kTrue, FlowKind::kDeltaMinus, FlowKind::kDeltaPlus}) {
    CHECK(flow(x0, clocks, k, 0.05, horizon) == ref);
  }
  const SandwichReport report = verify_sandwich(x0, clocks, 0.1, 0.05, 2);
  CHECK(report.passed);
}

TEST_CASE("flows preserve order") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const OrderedConfig x = random_ordered(rng, 20, 8);
    const OrderedConfig y = raise(rng, x, trial % 2);
    const ClockBundle clocks(100 + trial, 2.0, 1.0 / 20);
    for (FlowKind k : {FlowKind::kFree, FlowKind::kTrue, FlowKind::kDeltaMinus,
                       FlowKind::kDeltaPlus}) {
      CHECK(ordered_leq(flow(x, clocks, k, 0.1, 0.3 * 400), flow(y, clocks, k, 0.1, 0.3 * 400)));
    }
  }
}

TEST_CASE("sandwich on sampled clocks") {
  const OrderedConfig x0 = to_ordered(
      sample_initial(MacroProfile::uniform(64, 1.0), SimParams(40, 0.5, 1, 0.4)));
  for (std::uint64_t s = 0; s < 20; ++s) {
    const SandwichReport r = verify_sandwich(x0, ClockBundle(replica_seed(77, s), 0.5, 1.0 / 40),
                                             0.2, 0.05, 2);
    CHECK(r.passed);
    CHECK(r.comparisons > 0);
  }
}

TEST_CASE("true flow has the law of the simulator") {
  const long n = 5;
  const Configuration xi = Configuration::from_occupations({1, 0, 2, 0, 0, 0});
  const double horizon = 30.0;
  const int replicas = 4000;
  std::vector<double> a(n + 1, 0.0);
  std::vector<double> b(n + 1, 0.0);
  std::vector<double> a2(n + 1, 0.0);
  std::vector<double> b2(n + 1, 0.0);
  for (int r = 0; r < replicas; ++r) {
    const ClockBundle c1(replica_seed(1, r), 0.5, 0.2);
    const ClockBundle c2(replica_seed(2, r), 0.5, 0.2);
    const Configuration p = from_ordered(flow(to_ordered(xi), c1, FlowKind::kTrue, 0.1, horizon));
    const Configuration q = step_true(xi, c2, 0.0, horizon);
    for (long x = 0; x <= n; ++x) {
      a[x] += p.at(x);
      a2[x] += p.at(x) * p.at(x);
      b[x] += q.at(x);
      b2[x] += q.at(x) * q.at(x);
    }
  }
  for (long x = 0; x <= n; ++x) {
    const double ma = a[x] / replicas;
    const double mb = b[x] / replicas;
    const double se = std::sqrt((a2[x] / replicas - ma * ma + b2[x] / replicas - mb * mb) / replicas);
    CHECK(std::abs(ma - mb) <= 5.0 * se);
  }
}
