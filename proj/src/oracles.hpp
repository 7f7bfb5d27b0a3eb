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

// Reference computations used only to check the library. Nothing here calls
// into the production numerics; each routine takes a different route to the
// same quantity (spectral series, uniformization, closed forms).

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace curres::oracle {

/// 1 + 2 sum_k exp(-k^2 pi^2 t / 2) cos(k pi r) cos(k pi rp).
double neumann_kernel_spectral(double t, double r, double rp);

/// Poissonized powers of the jump matrix of the suppressed-jump walk on
/// {0..N} (uniformization at rate 1).
Eigen::MatrixXd rw_kernel_uniformization(long n, double t);

/// Law of the reflected walk started at n0 that steps +-1 at rate `rate`
/// each (steps below 0 suppressed), at time t, on {0..cap}. The cap is
/// chosen by the caller far above any reachable mass.
std::vector<double> reflected_count_law(long n0, double rate, double t, long cap);

/// Step profile on a uniform grid: atom at 0 plus cell densities.
struct StepProfile {
  double atom = 0.0;
  std::vector<double> density;
};

/// Cell averages of G_t * u + j int_0^t [G_s(., 0) - G_s(., 1)] ds from the
/// cosine series, `modes` terms.
std::vector<double> explicit_solution_spectral(const StepProfile& u, double j, double t,
                                               std::size_t modes = 20000);

/// Stationary density of the barrier flow for mass m and current j:
/// slope -2j, with an edge at sqrt(m/j) when m < j.
double stationary_density(double mass, double j, double r);

/// max(2j(R - r), 0), R = sqrt(m/j): the edge-supported linear profile.
double edge_linear_density(double mass, double j, double r);

/// Composite Simpson rule with n (even) panels.
double simpson(const std::function<double(double)>& f, double a, double b, int n);

/// Kolmogorov-Smirnov distance between an empirical sample of nonnegative
/// integers and a law on {0..cap}.
double ks_distance(const std::vector<long>& sample, const std::vector<double>& law);

}  // namespace curres::oracle
