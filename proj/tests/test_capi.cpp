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

// Exercises the C interface only.

#include <cstring>
#include <string>

#include "curres/curres.h"
#include "doctest.h"

TEST_CASE("version and errors") {
  CHECK(std::strlen(curres_version()) > 0);
  curres_profile* p = nullptr;
  CHECK(curres_profile_uniform(0, 1.0, &p) != CURRES_OK);
  CHECK(std::strlen(curres_last_error()) > 0);
  CHECK(p == nullptr);
  CHECK(curres_profile_uniform(8, 1.0, nullptr) == CURRES_INVALID_ARGUMENT);
  CHECK(std::string(curres_status_name(CURRES_NOT_IN_DOMAIN)) == "not in domain");
}

TEST_CASE("profile round trip through JSON") {
  const double dens[4] = {1.0, 2.0, 0.0, 0.5};
  curres_profile* p = nullptr;
  REQUIRE(curres_profile_create(0.25, dens, 4, &p) == CURRES_OK);
  char* text = nullptr;
  REQUIRE(curres_profile_to_json(p, &text) == CURRES_OK);
  curres_profile* q = nullptr;
  REQUIRE(curres_profile_from_json(text, 512, &q) == CURRES_OK);
  double tv = 1.0;
  REQUIRE(curres_tv_distance(p, q, &tv) == CURRES_OK);
  CHECK(tv == 0.0);
  double f = 0.0;
  REQUIRE(curres_tail_mass(q, 0.0, &f) == CURRES_OK);
  CHECK(f == doctest::Approx(1.125));
  curres_string_free(text);
  curres_profile_free(p);
  curres_profile_free(q);
}

TEST_CASE("profile specs and order") {
  curres_profile* u = nullptr;
  REQUIRE(curres_profile_from_json(R"({"kind":"with-edge","value":1.0,"edge":0.5})", 64, &u) ==
          CURRES_OK);
  double edge = 0.0;
  int has = 0;
  REQUIRE(curres_profile_edge(u, &edge, &has) == CURRES_OK);
  CHECK(has == 1);
  CHECK(edge == doctest::Approx(0.5));
  curres_profile* one = nullptr;
  REQUIRE(curres_profile_uniform(64, 1.0, &one) == CURRES_OK);
  int le = 0;
  REQUIRE(curres_leq(u, one, 1e-12, &le) == CURRES_OK);
  CHECK(le == 1);
  curres_profile_free(u);
  curres_profile_free(one);
}

TEST_CASE("cut and paste and barriers") {
  curres_profile* one = nullptr;
  REQUIRE(curres_profile_uniform(512, 1.0, &one) == CURRES_OK);
  curres_profile* k = nullptr;
  REQUIRE(curres_cut_and_paste(one, 1.0, 0.1, &k) == CURRES_OK);
  double atom = 0.0;
  REQUIRE(curres_profile_atom(k, &atom) == CURRES_OK);
  CHECK(atom == doctest::Approx(0.1));
  curres_profile* bad = nullptr;
  CHECK(curres_cut_and_paste(one, 20.0, 0.1, &bad) == CURRES_NOT_IN_DOMAIN);
  curres_profile* lo = nullptr;
  curres_profile* hi = nullptr;
  REQUIRE(curres_barrier_evolve(one, CURRES_LOWER, 0.5, 0.05, 4, &lo) == CURRES_OK);
  REQUIRE(curres_barrier_evolve(one, CURRES_UPPER, 0.5, 0.05, 4, &hi) == CURRES_OK);
  int le = 0;
  REQUIRE(curres_leq(lo, hi, 1e-8, &le) == CURRES_OK);
  CHECK(le == 1);
  curres_profile* psi = nullptr;
  double gap = 0.0;
  int depth = 0;
  int flagged = 1;
  REQUIRE(curres_separating_element(one, 0.2, 0.1, 3, 0.0, 0.0, &psi, &gap, &depth, &flagged) ==
          CURRES_OK);
  CHECK(depth == 3);
  CHECK(flagged == 0);
  CHECK(gap <= 4 * 0.2 * 0.1 / 8 + 1e-6);
  for (curres_profile* p : {one, k, lo, hi, psi}) curres_profile_free(p);
}

TEST_CASE("configurations and simulation") {
  curres_profile* one = nullptr;
  REQUIRE(curres_profile_uniform(64, 1.0, &one) == CURRES_OK);
  curres_config* xi = nullptr;
  REQUIRE(curres_sample_initial(one, 50, 0.5, 1, 0.1, &xi) == CURRES_OK);
  long count = 0;
  REQUIRE(curres_config_count(xi, &count) == CURRES_OK);
  CHECK(count == 50);
  curres_config* a = nullptr;
  curres_config* b = nullptr;
  REQUIRE(curres_simulate(xi, 0.5, 7, 0.05, &a) == CURRES_OK);
  REQUIRE(curres_simulate(xi, 0.5, 7, 0.05, &b) == CURRES_OK);
  size_t sites = 0;
  REQUIRE(curres_config_sites(a, &sites) == CURRES_OK);
  CHECK(sites == 51);
  int oa[51];
  int ob[51];
  REQUIRE(curres_config_occupations(a, oa, 51) == CURRES_OK);
  REQUIRE(curres_config_occupations(b, ob, 51) == CURRES_OK);
  CHECK(std::memcmp(oa, ob, sizeof(oa)) == 0);
  for (curres_config* c : {xi, a, b}) curres_config_free(c);
  curres_profile_free(one);
}

TEST_CASE("duality and reports") {
  const int occ[4] = {1, 0, 1, 0};
  const int walkers[2] = {0, 3};
  double lhs = 0.0;
  double rhs = 0.0;
  REQUIRE(curres_duality_check(occ, 4, walkers, 2, 1.0, &lhs, &rhs) == CURRES_OK);
  CHECK(std::abs(lhs - rhs) < 1e-8);
  char* report = nullptr;
  int passed = 0;
  CHECK(curres_run_acceptance("nope", &report, &passed) == CURRES_INVALID_ARGUMENT);
  REQUIRE(curres_run_acceptance("duality", &report, &passed) == CURRES_OK);
  CHECK(passed == 1);
  CHECK(std::string(report).find("\"passed\": true") != std::string::npos);
  curres_string_free(report);
  CHECK(curres_compare("{}", &report) == CURRES_CONFIGURATION);
}
