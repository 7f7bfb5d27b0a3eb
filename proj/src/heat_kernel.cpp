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

#include "curres/heat_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curres/error.hpp"

namespace curres {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

double normal_cdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }
double normal_sf(double z) { return 0.5 * std::erfc(z * kInvSqrt2); }

// Phi(x) - Phi(y) for x >= y without cancellation in either tail.
double cdf_difference(double x, double y) {
  if (y >= 0.0) return normal_sf(y) - normal_sf(x);
  return normal_cdf(x) - normal_cdf(y);
}

void require_time(double t) {
  require(t > 0.0 && std::isfinite(t), ErrorCode::kInvalidArgument,
          "heat kernel time must be positive");
}

// Second antiderivative of the centred Gaussian of variance t, with its
// linear ramp max(z, 0) removed: even, and small away from z = 0.
double ramp_free_primitive(double z, double t) {
  const double sigma = std::sqrt(t);
  const double az = std::abs(z);
  const double density = std::exp(-0.5 * z * z / t) / (sigma * std::sqrt(2.0 * std::numbers::pi));
  return t * density - az * normal_sf(az / sigma);
}

}  // namespace

KernelParams kernel_params(double t, double tail_tol) {
  require_time(t);
  require(tail_tol > 0.0, ErrorCode::kInvalidArgument, "tail tolerance must be positive");
  int k = 1;
  while (std::exp(-std::pow(2.0 * k - 1.0, 2) / (2.0 * t)) >= tail_tol) ++k;
  return {t, k, tail_tol};
}

double kernel_value(double t, double r, double rp, double tail_tol) {
  const KernelParams p = kernel_params(t, tail_tol);
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * t);
  double acc = 0.0;
  for (int k = -p.image_count; k <= p.image_count; ++k) {
    const double shift = 2.0 * k;
    const double d1 = r - (rp + shift);
    const double d2 = r - (shift - rp);
    acc += std::exp(-0.5 * d1 * d1 / t) + std::exp(-0.5 * d2 * d2 / t);
  }
  return acc * norm;
}

double kernel_mass(double t, double r, double a, double b, double tail_tol) {
  require(0.0 <= a && a <= b && b <= 1.0, ErrorCode::kInvalidArgument,
          "kernel_mass needs 0 <= a <= b <= 1");
  const KernelParams p = kernel_params(t, tail_tol);
  const double sigma = std::sqrt(t);
  double acc = 0.0;
  for (int k = -p.image_count; k <= p.image_count; ++k) {
    const double shift = 2.0 * k;
    // direct image r' + shift over [a, b]
    acc += cdf_difference((r - a - shift) / sigma, (r - b - shift) / sigma);
    // reflected image shift - r' over [a, b]
    acc += cdf_difference((r + b - shift) / sigma, (r + a - shift) / sigma);
  }
  return acc;
}

Eigen::VectorXd origin_cell_averages(double t, std::size_t cells, double tail_tol) {
  const KernelParams p = kernel_params(t, tail_tol);
  const double sigma = std::sqrt(t);
  const double m = static_cast<double>(cells);
  Eigen::VectorXd out(static_cast<Eigen::Index>(cells));
  for (std::size_t i = 0; i < cells; ++i) {
    const double lo = static_cast<double>(i) / m;
    const double hi = static_cast<double>(i + 1) / m;
    double acc = 0.0;
    for (int k = -p.image_count; k <= p.image_count; ++k) {
      const double shift = 2.0 * k;
      acc += 2.0 * cdf_difference((hi - shift) / sigma, (lo - shift) / sigma);
    }
    out[static_cast<Eigen::Index>(i)] = acc * m;
  }
  out /= out.sum() / m;
  return out;
}

HeatSemigroup::HeatSemigroup(double t, std::size_t cells, double tail_tol)
    : time_(t), cells_(cells), params_(kernel_params(t, tail_tol)) {
  require(cells > 0, ErrorCode::kInvalidArgument, "heat semigroup needs at least one cell");
  const long m = static_cast<long>(cells);
  const double h = 1.0 / static_cast<double>(cells);
  const double sigma = std::sqrt(t);
  const long images = params_.image_count;

  // overlap(o): double integral of the free kernel over a target cell and a
  // source cell o cells to its left.
  const long reach = (2 * images + 2) * m + 1;
  const long cutoff = static_cast<long>(std::ceil(40.0 * sigma / h)) + 2;
  std::vector<double> overlap(static_cast<std::size_t>(2 * reach + 1), 0.0);
  for (long o = -reach; o <= reach; ++o) {
    if (std::abs(o) > cutoff) continue;
    const double z = static_cast<double>(o) * h;
    double v = ramp_free_primitive(z + h, t) - 2.0 * ramp_free_primitive(z, t) +
               ramp_free_primitive(z - h, t);
    if (o == 0) v += h;
    overlap[static_cast<std::size_t>(o + reach)] = std::max(0.0, v);
  }
  auto at = [&](long o) {
    return (o < -reach || o > reach) ? 0.0 : overlap[static_cast<std::size_t>(o + reach)];
  };

  weights_.resize(m, m);
  for (long k = 0; k < m; ++k) {
    for (long i = 0; i < m; ++i) {
      double acc = 0.0;
      for (long s = -images; s <= images; ++s) {
        acc += at(i - k - 2 * s * m) + at(i + k + 1 - 2 * s * m);
      }
      weights_(i, k) = acc / h;
    }
    const double column = weights_.col(k).sum();
    weights_.col(k) /= column;
  }
  origin_ = origin_cell_averages(t, cells, tail_tol);
}

MacroProfile HeatSemigroup::apply(const MacroProfile& u) const {
  return apply_with_boundary_masses(u, u.atom_mass(), 0.0);
}

MacroProfile HeatSemigroup::apply_with_boundary_masses(const MacroProfile& u, double mass_at_0,
                                                       double mass_at_1) const {
  require(u.cells() == cells_, ErrorCode::kGridMismatch,
          "profile grid does not match the heat semigroup grid");
  const auto dens = u.density();
  Eigen::Map<const Eigen::VectorXd> rho(dens.data(), static_cast<Eigen::Index>(dens.size()));
  Eigen::VectorXd out = weights_ * rho;
  if (mass_at_0 != 0.0) out += mass_at_0 * origin_;
  if (mass_at_1 != 0.0) out += mass_at_1 * far_end_response();
  std::vector<double> result(out.data(), out.data() + out.size());
  if (mass_at_1 < 0.0 || !u.is_nonnegative()) {
    return MacroProfile::make_signed(0.0, std::move(result));
  }
  for (double& d : result) d = std::max(0.0, d);
  return MacroProfile(0.0, std::move(result));
}

Eigen::VectorXd HeatSemigroup::far_end_response() const { return origin_.reverse(); }

MacroProfile convolve(double t, const MacroProfile& u) {
  require_time(t);
  return HeatSemigroup(t, u.cells()).apply(u);
}

}  // namespace curres
