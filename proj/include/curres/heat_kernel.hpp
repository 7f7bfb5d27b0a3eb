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

#include <Eigen/Dense>

#include "curres/profile.hpp"

namespace curres {

/// Neumann heat kernel on [0,1] for d/dt rho = (1/2) d^2/dr^2 rho, built from
/// the free Gaussian of variance t by the method of images.
struct KernelParams {
  double time;
  int image_count;
  double tail_tol;
};

inline constexpr double kDefaultTailTol = 1e-14;

/// Smallest image count K with exp(-(2K-1)^2 / (2t)) < tail_tol.
KernelParams kernel_params(double t, double tail_tol = kDefaultTailTol);

/// G_t^neum(r, rp) as a truncated image sum.
double kernel_value(double t, double r, double rp, double tail_tol = kDefaultTailTol);

/// Integral of G_t^neum(r, .) over [a, b] (0 <= a <= b <= 1).
double kernel_mass(double t, double r, double a, double b, double tail_tol = kDefaultTailTol);

/// The Neumann semigroup at a fixed time acting on profiles of a fixed grid.
///
/// Output densities are exact cell averages: the double integral of the
/// kernel over (target cell) x (source cell) is evaluated in closed form from
/// the Gaussian's second antiderivative, and the atom at 0 is spread with the
/// exact cell masses of G_t^neum(., 0). Each source column is renormalized to
/// unit mass so the operator conserves mass to rounding.
class HeatSemigroup {
 public:
  HeatSemigroup(double t, std::size_t cells, double tail_tol = kDefaultTailTol);

  double time() const noexcept { return time_; }
  std::size_t cells() const noexcept { return cells_; }
  const KernelParams& params() const noexcept { return params_; }

  /// Result has no atom; an atom in u is smoothed into the density.
  MacroProfile apply(const MacroProfile& u) const;
  /// Signed variant: point masses at 0 and 1 with the given weights.
  MacroProfile apply_with_boundary_masses(const MacroProfile& u, double mass_at_0,
                                          double mass_at_1) const;

  /// Cell averages of G_t^neum(., 0).
  const Eigen::VectorXd& origin_response() const noexcept { return origin_; }
  /// Cell averages of G_t^neum(., 1).
  Eigen::VectorXd far_end_response() const;
  /// Entry (i, k): fraction of source cell k's mass that lands in cell i.
  const Eigen::MatrixXd& matrix() const noexcept { return weights_; }

 private:
  double time_;
  std::size_t cells_;
  KernelParams params_;
  Eigen::MatrixXd weights_;
  Eigen::VectorXd origin_;
};

/// One-shot convenience wrapper around HeatSemigroup.
MacroProfile convolve(double t, const MacroProfile& u);

/// Cell averages of G_t^neum(., 0) on a grid of `cells` cells.
Eigen::VectorXd origin_cell_averages(double t, std::size_t cells,
                                     double tail_tol = kDefaultTailTol);

}  // namespace curres
