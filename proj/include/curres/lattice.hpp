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
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace curres {

/// Transition matrix p_t(x, y) on {0..N} of the continuous-time walk that
/// jumps to each neighbour at rate 1/2, with jumps out of {0..N} suppressed.
/// Built from the cosine eigenbasis of the generator.
Eigen::MatrixXd rw_kernel(long n, double t);

/// w(x) = sum_y p(x, y) xi(y).
std::vector<double> mean_profile(const Eigen::MatrixXd& kernel, std::span<const int> occupations);

/// Falling factorial d_k(m) = m (m-1) ... (m-k+1); d_0(m) = 1.
std::int64_t poisson_polynomial(int k, int m);

/// D(xi, x) = prod over sites of d_{#walkers at y}(xi(y)).
double duality_functional(std::span<const int> occupations, std::span<const int> walkers);

struct DualityResult {
  double lhs;  // E_xi[D(xi_t, x)] over the occupation chain
  double rhs;  // E_x[D(xi, x_t)] over the walker chain
};

inline constexpr long kDualityMaxSites = 4;      // N
inline constexpr int kDualityMaxParticles = 3;   // |xi|
inline constexpr int kDualityMaxWalkers = 2;     // |x|

/// Both sides of the occupation/walker duality by exact exponentiation of the
/// two generators. `occupations` has N+1 entries. Throws kSizeLimit beyond
/// the limits above.
DualityResult duality_check(std::span<const int> occupations, std::span<const int> walkers,
                            double t);

}  // namespace curres
