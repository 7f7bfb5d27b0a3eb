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
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace curres {

/// Default tolerance for order checks between analytically related profiles.
inline constexpr double kExactTolerance = 1e-12;
inline constexpr std::size_t kDefaultGridCells = 512;

/// A finite measure on [0,1] of the form c*D_0 + rho(r) dr, with rho
/// piecewise constant on a uniform grid of M cells.
///
/// The tail function F(r) = mass of [r,1] (the atom counts only at r = 0) is
/// piecewise linear with kinks at cell boundaries; it is cached as suffix
/// sums so every evaluation is exact up to rounding.
///
/// Instances are immutable. Densities are nonnegative except for profiles
/// built with make_signed(), which only the boundary-source dynamics use.
class MacroProfile {
 public:
  MacroProfile(double atom_mass, std::vector<double> density);

  static MacroProfile uniform(std::size_t cells, double value);
  /// Cell averages of a density given through its antiderivative.
  static MacroProfile from_antiderivative(std::size_t cells,
                                          const std::function<double(double)>& primitive,
                                          double atom_mass = 0.0);
  /// Step function: value[k] on [breaks[k], breaks[k+1]); breaks span [0,1].
  static MacroProfile piecewise(std::size_t cells, std::span<const double> breaks,
                                std::span<const double> values, double atom_mass = 0.0);
  static MacroProfile make_signed(double atom_mass, std::vector<double> density);

  double atom_mass() const noexcept { return atom_; }
  std::span<const double> density() const noexcept { return density_; }
  std::size_t cells() const noexcept { return density_.size(); }
  double cell_width() const noexcept { return 1.0 / static_cast<double>(density_.size()); }
  double total_mass() const noexcept { return atom_ + suffix_[0]; }
  double bulk_mass() const noexcept { return suffix_[0]; }
  bool is_nonnegative() const noexcept;

  /// Mass of the density on [k*h, 1], k = 0..M (atom excluded).
  double boundary_tail(std::size_t k) const noexcept { return suffix_[k]; }
  double density_at(double r) const noexcept;
  double sup_density() const noexcept;

 private:
  MacroProfile(double atom_mass, std::vector<double> density, bool check);

  double atom_;
  std::vector<double> density_;
  std::vector<double> suffix_;
};

struct MacroParams {
  double j;
  double delta;

  MacroParams(double current, double step);
};

struct CompareOptions {
  double tol = kExactTolerance;
  /// When false, profiles on different grids are rejected with kGridMismatch.
  bool allow_resample = true;
};

/// F(r;u): atom at 0 plus the integral of the density over [r,1].
double tail_mass(const MacroProfile& u, double r);

/// inf{r : F(r;u) = 0} when this is < 1; nullopt when F > 0 on [0,1).
std::optional<double> profile_edge(const MacroProfile& u);

/// Mass-transport order: F(r;u) <= F(r;v) + tol for all r in [0,1].
bool leq(const MacroProfile& u, const MacroProfile& v, const CompareOptions& opts = {});

/// |c_u - c_v| + integral |rho_u - rho_v|.
double tv_distance(const MacroProfile& u, const MacroProfile& v,
                   const CompareOptions& opts = {});

/// sup over r of |F(r;u) - F(r;v)|, r > 0 and r = 0 both included.
double sup_tail_distance(const MacroProfile& u, const MacroProfile& v,
                         const CompareOptions& opts = {});

/// max over cells of |rho_u - rho_v| on the common refinement of both grids.
double sup_density_distance(const MacroProfile& u, const MacroProfile& v,
                            const CompareOptions& opts = {});

/// (F(eps*x) - F(eps*(x+ell))) / (eps*ell).
double macro_block_average(const MacroProfile& u, long x, long ell, double eps);

/// Mass-preserving transfer onto a grid of `cells` cells; exact refinement
/// when `cells` is a multiple of u.cells().
MacroProfile resample(const MacroProfile& u, std::size_t cells);

}  // namespace curres
