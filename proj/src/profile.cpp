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

#include "curres/profile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "curres/error.hpp"

namespace curres {

namespace {

std::vector<double> suffix_sums(std::span<const double> density) {
  const double h = 1.0 / static_cast<double>(density.size());
  std::vector<double> suffix(density.size() + 1, 0.0);
  for (std::size_t k = density.size(); k-- > 0;) suffix[k] = suffix[k + 1] + density[k] * h;
  return suffix;
}

// Union of both grids' cell boundaries, sorted, including 0 and 1.
std::vector<double> merged_breaks(std::size_t m1, std::size_t m2) {
  std::vector<double> breaks;
  breaks.reserve(m1 + m2 + 2);
  for (std::size_t k = 0; k <= m1; ++k) breaks.push_back(static_cast<double>(k) / m1);
  for (std::size_t k = 0; k <= m2; ++k) breaks.push_back(static_cast<double>(k) / m2);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  return breaks;
}

void check_grids(const MacroProfile& u, const MacroProfile& v, const CompareOptions& opts) {
  if (u.cells() != v.cells() && !opts.allow_resample) {
    fail(ErrorCode::kGridMismatch, "profiles live on grids of " + std::to_string(u.cells()) +
                                       " and " + std::to_string(v.cells()) + " cells");
  }
}

// Density part of F at r (no atom).
double bulk_tail(const MacroProfile& u, double r) {
  const std::size_t m = u.cells();
  const double scaled = r * static_cast<double>(m);
  if (scaled >= static_cast<double>(m)) return 0.0;
  if (scaled <= 0.0) return u.boundary_tail(0);
  const auto k = static_cast<std::size_t>(scaled);
  const double partial = (static_cast<double>(k + 1) - scaled) / static_cast<double>(m);
  return u.boundary_tail(k + 1) + u.density()[k] * partial;
}

}  // namespace

MacroProfile::MacroProfile(double atom_mass, std::vector<double> density)
    : MacroProfile(atom_mass, std::move(density), true) {}

MacroProfile::MacroProfile(double atom_mass, std::vector<double> density, bool check)
    : atom_(atom_mass), density_(std::move(density)) {
  require(!density_.empty(), ErrorCode::kInvalidArgument, "profile needs at least one cell");
  require(std::isfinite(atom_), ErrorCode::kInvalidArgument, "atom mass must be finite");
  for (double d : density_) {
    require(std::isfinite(d), ErrorCode::kInvalidArgument, "densities must be finite");
  }
  if (check) {
    require(atom_ >= 0.0, ErrorCode::kInvalidArgument, "atom mass must be nonnegative");
    for (double d : density_) {
      require(d >= 0.0, ErrorCode::kInvalidArgument, "densities must be nonnegative");
    }
  }
  suffix_ = suffix_sums(density_);
}

MacroProfile MacroProfile::uniform(std::size_t cells, double value) {
  return MacroProfile(0.0, std::vector<double>(cells, value));
}

MacroProfile MacroProfile::from_antiderivative(std::size_t cells,
                                               const std::function<double(double)>& primitive,
                                               double atom_mass) {
  require(cells > 0, ErrorCode::kInvalidArgument, "profile needs at least one cell");
  std::vector<double> density(cells);
  const double m = static_cast<double>(cells);
  double left = primitive(0.0);
  for (std::size_t k = 0; k < cells; ++k) {
    const double right = primitive(static_cast<double>(k + 1) / m);
    density[k] = std::max(0.0, (right - left) * m);
    left = right;
  }
  return MacroProfile(atom_mass, std::move(density));
}

MacroProfile MacroProfile::piecewise(std::size_t cells, std::span<const double> breaks,
                                     std::span<const double> values, double atom_mass) {
  require(breaks.size() == values.size() + 1 && !values.empty(), ErrorCode::kInvalidArgument,
          "piecewise profile needs one more break than values");
  require(breaks.front() == 0.0 && breaks.back() == 1.0, ErrorCode::kInvalidArgument,
          "piecewise breaks must span [0,1]");
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    require(breaks[i] <= breaks[i + 1], ErrorCode::kInvalidArgument,
            "piecewise breaks must be non-decreasing");
  }
  auto primitive = [&](double r) {
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double lo = breaks[i];
      const double hi = std::min(breaks[i + 1], r);
      if (hi > lo) acc += values[i] * (hi - lo);
    }
    return acc;
  };
  return from_antiderivative(cells, primitive, atom_mass);
}

MacroProfile MacroProfile::make_signed(double atom_mass, std::vector<double> density) {
  return MacroProfile(atom_mass, std::move(density), false);
}

bool MacroProfile::is_nonnegative() const noexcept {
  return atom_ >= 0.0 && std::all_of(density_.begin(), density_.end(),
                                     [](double d) { return d >= 0.0; });
}

double MacroProfile::density_at(double r) const noexcept {
  const double m = static_cast<double>(density_.size());
  const auto k = static_cast<std::size_t>(std::clamp(r * m, 0.0, m - 1.0));
  return density_[k];
}

double MacroProfile::sup_density() const noexcept {
  double best = 0.0;
  for (double d : density_) best = std::max(best, std::abs(d));
  return best;
}

MacroParams::MacroParams(double current, double step) : j(current), delta(step) {
  require(current > 0.0, ErrorCode::kInvalidArgument, "current j must be positive");
  require(step > 0.0, ErrorCode::kInvalidArgument, "time step delta must be positive");
}

double tail_mass(const MacroProfile& u, double r) {
  require(r >= 0.0 && r <= 1.0, ErrorCode::kInvalidArgument, "tail_mass needs r in [0,1]");
  return bulk_tail(u, r) + (r == 0.0 ? u.atom_mass() : 0.0);
}

std::optional<double> profile_edge(const MacroProfile& u) {
  const auto dens = u.density();
  std::size_t last = dens.size();
  for (std::size_t k = dens.size(); k-- > 0;) {
    if (dens[k] != 0.0) {
      last = k;
      break;
    }
  }
  if (last == dens.size()) return 0.0;  // nothing beyond the origin
  if (last + 1 == dens.size()) return std::nullopt;
  return static_cast<double>(last + 1) / static_cast<double>(dens.size());
}

bool leq(const MacroProfile& u, const MacroProfile& v, const CompareOptions& opts) {
  check_grids(u, v, opts);
  if (u.total_mass() > v.total_mass() + opts.tol) return false;
  if (u.cells() == v.cells()) {
    for (std::size_t k = 0; k <= u.cells(); ++k) {
      if (u.boundary_tail(k) > v.boundary_tail(k) + opts.tol) return false;
    }
    return true;
  }
  for (double r : merged_breaks(u.cells(), v.cells())) {
    if (bulk_tail(u, r) > bulk_tail(v, r) + opts.tol) return false;
  }
  return true;
}

double tv_distance(const MacroProfile& u, const MacroProfile& v, const CompareOptions& opts) {
  check_grids(u, v, opts);
  double acc = std::abs(u.atom_mass() - v.atom_mass());
  if (u.cells() == v.cells()) {
    const double h = u.cell_width();
    for (std::size_t k = 0; k < u.cells(); ++k) {
      acc += std::abs(u.density()[k] - v.density()[k]) * h;
    }
    return acc;
  }
  const auto breaks = merged_breaks(u.cells(), v.cells());
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double mid = 0.5 * (breaks[i] + breaks[i + 1]);
    acc += std::abs(u.density_at(mid) - v.density_at(mid)) * (breaks[i + 1] - breaks[i]);
  }
  return acc;
}

double sup_tail_distance(const MacroProfile& u, const MacroProfile& v,
                         const CompareOptions& opts) {
  check_grids(u, v, opts);
  double best = std::abs(u.total_mass() - v.total_mass());
  for (double r : merged_breaks(u.cells(), v.cells())) {
    best = std::max(best, std::abs(bulk_tail(u, r) - bulk_tail(v, r)));
  }
  return best;
}

double sup_density_distance(const MacroProfile& u, const MacroProfile& v,
                            const CompareOptions& opts) {
  check_grids(u, v, opts);
  const auto breaks = merged_breaks(u.cells(), v.cells());
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double mid = 0.5 * (breaks[i] + breaks[i + 1]);
    best = std::max(best, std::abs(u.density_at(mid) - v.density_at(mid)));
  }
  return best;
}

double macro_block_average(const MacroProfile& u, long x, long ell, double eps) {
  require(ell > 0 && eps > 0.0, ErrorCode::kInvalidArgument,
          "block average needs ell > 0 and eps > 0");
  const double lo = eps * static_cast<double>(x);
  const double hi = eps * static_cast<double>(x + ell);
  require(x >= 0 && hi <= 1.0 + 1e-12, ErrorCode::kInvalidArgument,
          "block-average window lies outside [0,1]");
  return (tail_mass(u, lo) - tail_mass(u, std::min(hi, 1.0))) / (eps * static_cast<double>(ell));
}

MacroProfile resample(const MacroProfile& u, std::size_t cells) {
  require(cells > 0, ErrorCode::kInvalidArgument, "resample needs at least one cell");
  if (cells == u.cells()) return u;
  std::vector<double> density(cells);
  const double m = static_cast<double>(cells);
  if (cells % u.cells() == 0) {
    const std::size_t factor = cells / u.cells();
    for (std::size_t k = 0; k < cells; ++k) density[k] = u.density()[k / factor];
  } else {
    for (std::size_t k = 0; k < cells; ++k) {
      const double a = static_cast<double>(k) / m;
      const double b = static_cast<double>(k + 1) / m;
      density[k] = (bulk_tail(u, a) - bulk_tail(u, b)) * m;
      if (u.is_nonnegative()) density[k] = std::max(0.0, density[k]);
    }
  }
  return u.is_nonnegative() ? MacroProfile(u.atom_mass(), std::move(density))
                            : MacroProfile::make_signed(u.atom_mass(), std::move(density));
}

}  // namespace curres
