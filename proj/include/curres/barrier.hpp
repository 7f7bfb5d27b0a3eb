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

#include <cstddef>
#include <vector>

#include "curres/heat_kernel.hpp"
#include "curres/profile.hpp"

namespace curres {

enum class BarrierSide { kLower, kUpper };

/// R_delta(u) = inf{r : F(r;u) = j*delta}. Requires the density part of u to
/// carry more than j*delta.
double cut_point(const MacroProfile& u, double j, double delta);

/// Moves mass j*delta from the right end of u to an atom at the origin. The
/// cell containing the cut keeps its remaining fraction of mass, so F(0;.)
/// is preserved exactly. Throws kNotInDomain when F(0;rho_u) <= j*delta.
MacroProfile cut_and_paste(const MacroProfile& u, double j, double delta);

/// Throws kConfiguration when sqrt(delta) < 2 * cell width.
void check_grid_resolution(double delta, std::size_t cells);

/// Alternates the heat semigroup at time delta with the cut-and-paste map.
/// Lower: cut after smoothing. Upper: smooth after cutting.
class BarrierStepper {
 public:
  BarrierStepper(double j, double delta, std::size_t cells);

  MacroProfile step(const MacroProfile& u, BarrierSide side) const;
  MacroProfile evolve(const MacroProfile& u, BarrierSide side, long steps) const;

  double j() const noexcept { return j_; }
  double delta() const noexcept { return delta_; }
  const HeatSemigroup& semigroup() const noexcept { return heat_; }

 private:
  double j_;
  double delta_;
  HeatSemigroup heat_;
};

MacroProfile barrier_step(const MacroProfile& u, BarrierSide side, double j, double delta);
MacroProfile barrier_evolve(const MacroProfile& u, BarrierSide side, double j, double delta,
                            long steps);

/// Lower and upper barriers at a common time over the dyadic schedule
/// delta_n = tau * 2^-n.
struct BarrierLadder {
  MacroProfile initial;
  double time = 0.0;
  double tau = 0.0;
  std::vector<int> levels;
  std::vector<double> deltas;
  std::vector<MacroProfile> lowers;
  std::vector<MacroProfile> uppers;
  std::vector<double> gaps;         // F(0; |upper - lower|)
  std::vector<double> mass_errors;  // max over both sides of |F(0;S) - F(0;u)|
};

struct LadderOptions {
  int depth = 8;
  /// Schedule base; defaults to the target time.
  double tau = 0.0;
  /// Stop refining once a level's gap drops below this (0 disables).
  double gap_tol = 0.0;
};

/// Levels whose delta does not fit u (j*delta >= F(0;rho_u)) are skipped; a
/// level whose step count t/delta is not an integer is a configuration error.
BarrierLadder barrier_ladder(const MacroProfile& u, double j, double t,
                             const LadderOptions& opts = {});

struct SeparatingElement {
  MacroProfile profile;
  double time = 0.0;
  double achieved_gap = 0.0;
  int refinement_depth = 0;
  /// Gap still above the requested tolerance at the deepest level.
  bool flagged = false;
  /// lower_n <= profile <= upper_n held for every computed level.
  bool bracket_certified = false;
  BarrierLadder ladder;
};

inline constexpr double kBracketTolerance = 1e-8;

/// Estimates rho(., t) by the deepest upper barrier of the ladder, which is
/// certified above the limit; the gap bounds the distance to the lower side.
SeparatingElement separating_element(const MacroProfile& u, double j, double t, int depth,
                                     double gap_tol, double tau = 0.0);

struct ExplicitSolution {
  MacroProfile profile;
  /// rho(1,t) <= 0: an edge has formed and the formula no longer applies.
  bool edge_formed = false;
  /// Difference between the 200-node rule and the same rule at half step.
  double quadrature_error = 0.0;
};

/// G_t * u + j * int_0^t [G_s(., 0) - G_s(., 1)] ds as cell averages.
ExplicitSolution explicit_no_edge(const MacroProfile& u, double j, double t);
/// Same formula evaluated at a single point r.
double explicit_no_edge_at(const MacroProfile& u, double j, double t, double r);

/// One step of u -> G_delta * (u + j delta D_0 - j delta D_1). The result may
/// carry negative density next to r = 1.
MacroProfile q_delta_step(const MacroProfile& u, double j, double delta);
MacroProfile q_delta_evolve(const MacroProfile& u, double j, double delta, long steps);

/// Lattice analogue of the lower barrier on {0..N}, driven by the random-walk
/// kernel at time N^2 * delta.
struct DiscreteScheme {
  double eps = 0.0;
  double delta = 0.0;
  double j = 0.0;
  std::vector<std::vector<double>> profiles;
  std::vector<long> cut_points;

  long sites() const noexcept {
    return profiles.empty() ? 0 : static_cast<long>(profiles.front().size());
  }
  const std::vector<double>& last() const { return profiles.back(); }
};

/// u_0(x) = rho(eps x), plus the atom scaled to eps^-1 c at site 0.
DiscreteScheme discrete_scheme_from_profile(const MacroProfile& v0, long n_sites_minus_one,
                                            double j, double delta);
DiscreteScheme discrete_evolution(const DiscreteScheme& init, long steps);

/// eps * sum_{y >= x} u(y) for every site x.
std::vector<double> scaled_lattice_tail(std::span<const double> site_values, double eps);

}  // namespace curres
