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

#include "curres/barrier.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <numbers>
#include <string>

#include "curres/error.hpp"
#include "curres/lattice.hpp"

namespace curres {

namespace {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre nodes on [-1, 1] by Newton iteration on P_n.
QuadratureRule gauss_legendre(int n) {
  QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

constexpr int kNodesPerPanel = 10;
constexpr int kPanels = 20;  // 200 nodes in total

// Integrates f over s in [0, t] after s = sigma^2, which removes the s^-1/2
// singularity of the kernel at coinciding points.
template <typename Accumulate>
void integrate_time(double t, int panels, Accumulate&& accumulate) {
  static const QuadratureRule rule = gauss_legendre(kNodesPerPanel);
  const double top = std::sqrt(t);
  const double width = top / panels;
  for (int p = 0; p < panels; ++p) {
    const double centre = (p + 0.5) * width;
    for (int q = 0; q < kNodesPerPanel; ++q) {
      const double sigma = centre + 0.5 * width * rule.nodes[q];
      const double weight = 0.5 * width * rule.weights[q] * 2.0 * sigma;
      accumulate(sigma * sigma, weight);
    }
  }
}

Eigen::VectorXd boundary_source_integral(double t, std::size_t cells, int panels) {
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cells));
  integrate_time(t, panels, [&](double s, double w) {
    const Eigen::VectorXd a = origin_cell_averages(s, cells);
    acc += w * (a - a.reverse());
  });
  return acc;
}

}  // namespace

double cut_point(const MacroProfile& u, double j, double delta) {
  const double target = j * delta;
  if (!(u.bulk_mass() > target)) {
    fail(ErrorCode::kNotInDomain, "density mass " + std::to_string(u.bulk_mass()) +
                                      " does not exceed j*delta = " + std::to_string(target));
  }
  const std::size_t m = u.cells();
  std::size_t k = m - 1;
  while (u.boundary_tail(k) < target) --k;  // terminates: tail(0) > target
  const auto dens = u.density();
  const double h = u.cell_width();
  if (u.boundary_tail(k) == target) {
    // F sits exactly at the level on a boundary; take the leftmost point of
    // any flat stretch.
    while (k > 0 && dens[k - 1] == 0.0) --k;
    return static_cast<double>(k) * h;
  }
  const double excess = target - u.boundary_tail(k + 1);
  return static_cast<double>(k + 1) * h - excess / dens[k];
}

MacroProfile cut_and_paste(const MacroProfile& u, double j, double delta) {
  const double target = j * delta;
  const double r_cut = cut_point(u, j, delta);
  assert(r_cut > 0.0 || u.bulk_mass() > target);
  (void)r_cut;
  const std::size_t m = u.cells();
  std::size_t k = m - 1;
  while (u.boundary_tail(k) < target) --k;
  std::vector<double> out(u.density().begin(), u.density().end());
  out[k] = std::max(0.0, (u.boundary_tail(k) - target) * static_cast<double>(m));
  std::fill(out.begin() + static_cast<long>(k) + 1, out.end(), 0.0);
  return MacroProfile(u.atom_mass() + target, std::move(out));
}

void check_grid_resolution(double delta, std::size_t cells) {
  const double h = 1.0 / static_cast<double>(cells);
  if (std::sqrt(delta) < 2.0 * h) {
    fail(ErrorCode::kConfiguration,
         "delta = " + std::to_string(delta) + " is under-resolved on " + std::to_string(cells) +
             " cells (need sqrt(delta) >= 2 * cell width)");
  }
}

BarrierStepper::BarrierStepper(double j, double delta, std::size_t cells)
    : j_(j), delta_(delta), heat_((check_grid_resolution(delta, cells), delta), cells) {
  require(j >= 0.0, ErrorCode::kInvalidArgument, "current j must be nonnegative");
}

MacroProfile BarrierStepper::step(const MacroProfile& u, BarrierSide side) const {
  if (side == BarrierSide::kLower) return cut_and_paste(heat_.apply(u), j_, delta_);
  return heat_.apply(cut_and_paste(u, j_, delta_));
}

MacroProfile BarrierStepper::evolve(const MacroProfile& u, BarrierSide side, long steps) const {
  require(steps >= 0, ErrorCode::kInvalidArgument, "step count must be nonnegative");
  MacroProfile current = u;
  for (long n = 0; n < steps; ++n) current = step(current, side);
  return current;
}

MacroProfile barrier_step(const MacroProfile& u, BarrierSide side, double j, double delta) {
  return BarrierStepper(j, delta, u.cells()).step(u, side);
}

MacroProfile barrier_evolve(const MacroProfile& u, BarrierSide side, double j, double delta,
                            long steps) {
  if (steps == 0) return u;
  return BarrierStepper(j, delta, u.cells()).evolve(u, side, steps);
}

BarrierLadder barrier_ladder(const MacroProfile& u, double j, double t,
                             const LadderOptions& opts) {
  require(t > 0.0, ErrorCode::kInvalidArgument, "ladder time must be positive");
  require(opts.depth >= 1, ErrorCode::kInvalidArgument, "ladder depth must be at least 1");
  require(u.total_mass() > 0.0, ErrorCode::kInvalidArgument, "initial profile has zero mass");
  const double tau = opts.tau > 0.0 ? opts.tau : t;
  BarrierLadder ladder{u, t, tau, {}, {}, {}, {}, {}, {}};
  const double mass = u.total_mass();
  for (int n = 1; n <= opts.depth; ++n) {
    const double delta = tau * std::ldexp(1.0, -n);
    if (j * delta >= u.bulk_mass()) continue;
    const double ratio = t / delta;
    const long steps = std::lround(ratio);
    if (std::abs(ratio - static_cast<double>(steps)) > 1e-9 * ratio || steps < 1) {
      fail(ErrorCode::kConfiguration, "time " + std::to_string(t) +
                                          " is not a multiple of delta = " + std::to_string(delta));
    }
    const BarrierStepper stepper(j, delta, u.cells());
    MacroProfile lower = stepper.evolve(u, BarrierSide::kLower, steps);
    MacroProfile upper = stepper.evolve(u, BarrierSide::kUpper, steps);
    const double gap = tv_distance(upper, lower);
    ladder.levels.push_back(n);
    ladder.deltas.push_back(delta);
    ladder.mass_errors.push_back(
        std::max(std::abs(lower.total_mass() - mass), std::abs(upper.total_mass() - mass)));
    ladder.gaps.push_back(gap);
    ladder.lowers.push_back(std::move(lower));
    ladder.uppers.push_back(std::move(upper));
    if (opts.gap_tol > 0.0 && gap < opts.gap_tol) break;
  }
  if (ladder.levels.empty()) {
    fail(ErrorCode::kNotInDomain, "no ladder level has j*delta below the initial density mass");
  }
  return ladder;
}

SeparatingElement separating_element(const MacroProfile& u, double j, double t, int depth,
                                     double gap_tol, double tau) {
  require(u.total_mass() > 0.0, ErrorCode::kInvalidArgument, "initial profile has zero mass");
  const BarrierLadder ladder = barrier_ladder(u, j, t, {depth, tau, gap_tol});
  SeparatingElement out{ladder.uppers.back(), t, ladder.gaps.back(), ladder.levels.back(),
                        false, true, ladder};
  out.flagged = gap_tol > 0.0 && out.achieved_gap > gap_tol;
  const CompareOptions cmp{kBracketTolerance * std::max(1.0, u.total_mass()), true};
  for (std::size_t n = 0; n < out.ladder.levels.size(); ++n) {
    if (!leq(out.ladder.lowers[n], out.profile, cmp) ||
        !leq(out.profile, out.ladder.uppers[n], cmp)) {
      out.bracket_certified = false;
    }
  }
  return out;
}

ExplicitSolution explicit_no_edge(const MacroProfile& u, double j, double t) {
  require(t > 0.0, ErrorCode::kInvalidArgument, "time must be positive");
  const std::size_t m = u.cells();
  const MacroProfile smoothed = HeatSemigroup(t, m).apply(u);
  const Eigen::VectorXd source = boundary_source_integral(t, m, kPanels);
  const Eigen::VectorXd check = boundary_source_integral(t, m, 2 * kPanels);
  std::vector<double> dens(m);
  for (std::size_t i = 0; i < m; ++i) {
    dens[i] = smoothed.density()[i] + j * source[static_cast<Eigen::Index>(i)];
  }
  ExplicitSolution out{MacroProfile::make_signed(0.0, dens), false,
                       j * (source - check).cwiseAbs().maxCoeff()};
  out.edge_formed = dens.back() <= 0.0;
  if (out.profile.is_nonnegative()) out.profile = MacroProfile(0.0, std::move(dens));
  return out;
}

double explicit_no_edge_at(const MacroProfile& u, double j, double t, double r) {
  require(t > 0.0, ErrorCode::kInvalidArgument, "time must be positive");
  require(r >= 0.0 && r <= 1.0, ErrorCode::kInvalidArgument, "r must lie in [0,1]");
  const double h = u.cell_width();
  double value = u.atom_mass() * kernel_value(t, r, 0.0);
  for (std::size_t k = 0; k < u.cells(); ++k) {
    const double rho = u.density()[k];
    if (rho == 0.0) continue;
    const double a = static_cast<double>(k) * h;
    value += rho * kernel_mass(t, r, a, std::min(1.0, a + h));
  }
  double source = 0.0;
  integrate_time(t, kPanels, [&](double s, double w) {
    source += w * (kernel_value(s, r, 0.0) - kernel_value(s, r, 1.0));
  });
  return value + j * source;
}

MacroProfile q_delta_step(const MacroProfile& u, double j, double delta) {
  require(delta > 0.0, ErrorCode::kInvalidArgument, "delta must be positive");
  return HeatSemigroup(delta, u.cells())
      .apply_with_boundary_masses(u, u.atom_mass() + j * delta, -j * delta);
}

MacroProfile q_delta_evolve(const MacroProfile& u, double j, double delta, long steps) {
  require(delta > 0.0, ErrorCode::kInvalidArgument, "delta must be positive");
  const HeatSemigroup heat(delta, u.cells());
  MacroProfile current = u;
  for (long n = 0; n < steps; ++n) {
    current = heat.apply_with_boundary_masses(current, current.atom_mass() + j * delta,
                                              -j * delta);
  }
  return current;
}

DiscreteScheme discrete_scheme_from_profile(const MacroProfile& v0, long n_sites_minus_one,
                                            double j, double delta) {
  require(n_sites_minus_one >= 2, ErrorCode::kInvalidArgument, "lattice needs N >= 2");
  require(delta > 0.0 && j >= 0.0, ErrorCode::kInvalidArgument,
          "discrete scheme needs delta > 0 and j >= 0");
  const long n = n_sites_minus_one;
  const double eps = 1.0 / static_cast<double>(n);
  std::vector<double> u0(static_cast<std::size_t>(n + 1));
  for (long x = 0; x <= n; ++x) u0[static_cast<std::size_t>(x)] = v0.density_at(eps * x);
  u0[0] += v0.atom_mass() / eps;
  return DiscreteScheme{eps, delta, j, {std::move(u0)}, {}};
}

DiscreteScheme discrete_evolution(const DiscreteScheme& init, long steps) {
  require(!init.profiles.empty(), ErrorCode::kInvalidArgument, "discrete scheme has no profile");
  require(steps >= 0, ErrorCode::kInvalidArgument, "step count must be nonnegative");
  DiscreteScheme out = init;
  if (steps == 0) return out;
  const long n = init.sites() - 1;
  const double micro_time = init.delta / (init.eps * init.eps);
  const Eigen::MatrixXd kernel = rw_kernel(n, micro_time);
  const double target = init.j * init.delta / init.eps;
  for (long k = 0; k < steps; ++k) {
    const auto& prev = out.profiles.back();
    Eigen::Map<const Eigen::VectorXd> u(prev.data(), static_cast<Eigen::Index>(prev.size()));
    const Eigen::VectorXd smoothed = kernel * u;
    std::vector<double> tail(prev.size() + 1, 0.0);
    for (long x = n; x >= 0; --x) tail[x] = tail[x + 1] + smoothed[x];
    if (!(tail[0] > target)) {
      fail(ErrorCode::kNotInDomain, "lattice mass does not exceed eps^-1 j delta");
    }
    long cut = n;
    while (tail[cut] < target) --cut;
    std::vector<double> next(prev.size(), 0.0);
    for (long x = 0; x < cut; ++x) next[x] = smoothed[x];
    next[cut] = tail[cut] - target;
    next[0] += target;
    out.cut_points.push_back(cut);
    out.profiles.push_back(std::move(next));
  }
  return out;
}

std::vector<double> scaled_lattice_tail(std::span<const double> site_values, double eps) {
  std::vector<double> out(site_values.size(), 0.0);
  double acc = 0.0;
  for (std::size_t x = site_values.size(); x-- > 0;) {
    acc += site_values[x];
    out[x] = eps * acc;
  }
  return out;
}

}  // namespace curres
