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

#include <random>
#include <vector>

#include "curres/error.hpp"
#include "curres/profile.hpp"
#include "doctest.h"

using namespace curres;

namespace {

MacroProfile step(std::size_t cells, std::vector<double> breaks, std::vector<double> values,
                  double atom = 0.0) {
  return MacroProfile::piecewise(cells, breaks, values, atom);
}

MacroProfile random_rational(std::mt19937_64& rng, std::size_t cells) {
  std::uniform_int_distribution<int> q(0, 8);
  std::vector<double> d(cells);
  for (auto& v : d) v = q(rng) / 4.0;
  return MacroProfile(q(rng) / 8.0, d);
}

}  // namespace

TEST_CASE("tail mass of simple profiles") {
  CHECK(tail_mass(MacroProfile::uniform(512, 1.0), 0.25) == doctest::Approx(0.75).epsilon(1e-14));
  const MacroProfile atom_only(0.1, std::vector<double>(64, 0.0));
  CHECK(tail_mass(atom_only, 0.0) == doctest::Approx(0.1));
  CHECK(tail_mass(atom_only, 0.5) == 0.0);
  CHECK(tail_mass(step(512, {0.0, 0.5, 1.0}, {2.0, 0.0}), 0.3) ==
        doctest::Approx(0.4).epsilon(1e-14));
  CHECK(tail_mass(MacroProfile::uniform(10, 1.0), 1.0) == 0.0);
}

TEST_CASE("edge location") {
  const auto half = profile_edge(step(512, {0.0, 0.5, 1.0}, {1.0, 0.0}));
  REQUIRE(half.has_value());
  CHECK(*half == doctest::Approx(0.5));
  CHECK_FALSE(profile_edge(MacroProfile::uniform(512, 1.0)).has_value());
  const auto origin = profile_edge(MacroProfile(0.2, std::vector<double>(32, 0.0)));
  REQUIRE(origin.has_value());
  CHECK(*origin == 0.0);
}

TEST_CASE("mass-transport order") {
  const MacroProfile left = step(512, {0.0, 0.5, 1.0}, {1.0, 0.0});
  const MacroProfile right = step(512, {0.0, 0.5, 1.0}, {0.0, 1.0});
  CHECK(leq(left, left));
  CHECK(leq(left, right));
  CHECK_FALSE(leq(right, left));
  CHECK_FALSE(leq(MacroProfile::uniform(512, 1.0), MacroProfile::uniform(512, 0.5)));

  // Pointwise larger on some cells yet below in the order.
  const MacroProfile u = step(10, {0.0, 0.2, 0.6, 0.8, 1.0}, {3.0, 0.0, 1.0, 0.0});
  const MacroProfile v = step(10, {0.0, 0.6, 1.0}, {0.5, 1.25});
  CHECK(u.density()[0] > v.density()[0]);
  CHECK(u.density()[6] > 0.5);
  CHECK(leq(u, v));
}

TEST_CASE("order on mismatched grids") {
  const MacroProfile a = MacroProfile::uniform(64, 1.0);
  const MacroProfile b = MacroProfile::uniform(96, 1.0);
  CHECK(leq(a, b));
  CHECK_THROWS_AS(leq(a, b, {kExactTolerance, false}), Error);
  try {
    (void)tv_distance(a, b, {kExactTolerance, false});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kGridMismatch);
  }
}

TEST_CASE("total variation distance") {
  const MacroProfile one = MacroProfile::uniform(100, 1.0);
  CHECK(tv_distance(one, one) == 0.0);
  CHECK(tv_distance(one, MacroProfile::uniform(100, 0.0)) == doctest::Approx(1.0));
  const MacroProfile cut = step(100, {0.0, 0.9, 1.0}, {1.0, 0.0}, 0.1);
  CHECK(tv_distance(cut, one) == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("macro block average") {
  CHECK(macro_block_average(MacroProfile::uniform(512, 1.0), 7, 13, 0.01) ==
        doctest::Approx(1.0));
  const MacroProfile u = step(512, {0.0, 0.5, 1.0}, {2.0, 0.0});
  CHECK(macro_block_average(u, 0, 50, 0.01) == doctest::Approx(2.0));
  CHECK(macro_block_average(u, 25, 50, 0.01) == doctest::Approx(1.0));
  CHECK_THROWS_AS(macro_block_average(u, 90, 50, 0.01), Error);
}

TEST_CASE("invalid profiles are rejected") {
  CHECK_THROWS_AS(MacroProfile(-0.1, std::vector<double>(4, 1.0)), Error);
  CHECK_THROWS_AS(MacroProfile(0.0, std::vector<double>{1.0, -1.0}), Error);
  CHECK_THROWS_AS(MacroProfile(0.0, std::vector<double>{}), Error);
}

TEST_CASE("random profiles: mass, order and metric properties") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const MacroProfile u = random_rational(rng, 16);
    const MacroProfile v = random_rational(rng, 16);
    const MacroProfile w = random_rational(rng, 16);
    CHECK(tail_mass(u, 0.0) == doctest::Approx(u.atom_mass() + u.bulk_mass()));
    CHECK(tail_mass(u, 1.0) == 0.0);
    double prev = tail_mass(u, 0.0);
    for (int k = 1; k <= 64; ++k) {
      const double f = tail_mass(u, k / 64.0);
      CHECK(f <= prev + 1e-15);
      prev = f;
    }
    const CompareOptions exact{0.0, true};
    if (leq(u, v, exact) && leq(v, w, exact)) CHECK(leq(u, w, exact));
    if (leq(u, v, exact) && leq(v, u, exact)) CHECK(tv_distance(u, v) == 0.0);
    CHECK(tv_distance(u, v) == doctest::Approx(tv_distance(v, u)));
    CHECK(tv_distance(u, w) <= tv_distance(u, v) + tv_distance(v, w) + 1e-12);
    CHECK(tv_distance(u, u) == 0.0);
  }
}

TEST_CASE("resampling conserves mass and refines exactly") {
  const MacroProfile u = step(10, {0.0, 0.3, 1.0}, {2.0, 0.5}, 0.2);
  const MacroProfile fine = resample(u, 40);
  CHECK(fine.total_mass() == doctest::Approx(u.total_mass()).epsilon(1e-14));
  CHECK(sup_tail_distance(u, fine) < 1e-14);
  const MacroProfile coarse = resample(u, 7);
  CHECK(coarse.total_mass() == doctest::Approx(u.total_mass()).epsilon(1e-14));
}
