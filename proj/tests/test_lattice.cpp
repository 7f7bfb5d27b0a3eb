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
#include <vector>

#include "curres/error.hpp"
#include "curres/lattice.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace curres;

TEST_CASE("random-walk kernel limits") {
  const Eigen::MatrixXd id = rw_kernel(12, 0.0);
  CHECK((id - Eigen::MatrixXd::Identity(13, 13)).cwiseAbs().maxCoeff() < 1e-14);
  const Eigen::MatrixXd flat = rw_kernel(12, 1e4 * 144);
  CHECK((flat.array() - 1.0 / 13.0).abs().maxCoeff() < 1e-8);
  const Eigen::MatrixXd p = rw_kernel(20, 3.7);
  CHECK((p - oracle::rw_kernel_uniformization(20, 3.7)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((p.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-13);
  CHECK((p - p.transpose()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("Poisson polynomials") {
  CHECK(poisson_polynomial(0, 5) == 1);
  CHECK(poisson_polynomial(2, 3) == 6);
  CHECK(poisson_polynomial(4, 3) == 0);
  CHECK(poisson_polynomial(1, 0) == 0);
}

TEST_CASE("duality at time zero") {
  const std::vector<int> occ{2, 0, 1, 0};
  const std::vector<int> walkers{0, 0};
  const DualityResult r = duality_check(occ, walkers, 0.0);
  CHECK(r.lhs == doctest::Approx(duality_functional(occ, walkers)));
  CHECK(r.rhs == doctest::Approx(2.0));
}

TEST_CASE("single particle duality reduces to the kernel") {
  const std::vector<int> occ{1, 0, 0};
  const std::vector<int> walkers{1};
  const DualityResult r = duality_check(occ, walkers, 0.5);
  const double p = rw_kernel(2, 0.5)(1, 0);
  CHECK(std::abs(r.lhs - p) < 1e-12);
  CHECK(std::abs(r.rhs - p) < 1e-12);
}

TEST_CASE("two-particle duality") {
  const std::vector<int> occ{1, 0, 1, 0};
  const std::vector<int> walkers{0, 3};
  const DualityResult r = duality_check(occ, walkers, 1.0);
  CHECK(std::abs(r.lhs - r.rhs) < 1e-8);
}

TEST_CASE("duality size limits") {
  const std::vector<int> big(7, 1);
  const std::vector<int> walkers{0};
  try {
    (void)duality_check(big, walkers, 1.0);
    FAIL("expected kSizeLimit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSizeLimit);
  }
}
