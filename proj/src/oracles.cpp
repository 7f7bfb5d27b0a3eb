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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

namespace curres::oracle {

double neumann_kernel_spectral(double t, double r, double rp) {
  constexpr double pi = std::numbers::pi;
  double sum = 1.0;
  for (int k = 1;; ++k) {
    const double decay = std::exp(-0.5 * k * k * pi * pi * t);
    sum += 2.0 * decay * std::cos(k * pi * r) * std::cos(k * pi * rp);
    if (2.0 * decay < 1e-17) break;
  }
  return sum;
}

Eigen::MatrixXd rw_kernel_uniformization(long n, double t) {
  const Eigen::Index sites = n + 1;
  Eigen::MatrixXd jump = Eigen::MatrixXd::Zero(sites, sites);
  for (Eigen::Index x = 0; x < sites; ++x) {
    if (x > 0) jump(x, x - 1) = 0.5;
    if (x + 1 < sites) jump(x, x + 1) = 0.5;
    jump(x, x) = 1.0 - jump.row(x).sum();
  }
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(sites, sites);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(sites, sites);
  double weight = std::exp(-t);
  double mass = 0.0;
  for (int k = 0; k < 100000; ++k) {
    out += weight * term;
    mass += weight;
    if (1.0 - mass < 1e-15 && k > t) break;
    term = term * jump;
    weight *= t / (k + 1);
  }
  return out;
}

std::vector<double> reflected_count_law(long n0, double rate, double t, long cap) {
  const Eigen::Index size = cap + 1;
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(size, size);
  for (Eigen::Index n = 0; n < size; ++n) {
    if (n + 1 < size) {
      q(n, n + 1) = rate;
      q(n, n) -= rate;
    }
    if (n > 0) {
      q(n, n - 1) = rate;
      q(n, n) -= rate;
    }
  }
  const Eigen::MatrixXd p = (t * q).exp();
  std::vector<double> law(static_cast<std::size_t>(size));
  for (Eigen::Index n = 0; n < size; ++n) law[static_cast<std::size_t>(n)] = p(n0, n);
  return law;
}

std::vector<double> explicit_solution_spectral(const StepProfile& u, double j, double t,
                                               std::size_t modes) {
  constexpr double pi = std::numbers::pi;
  const std::size_t m = u.density.size();
  const double h = 1.0 / static_cast<double>(m);
  // Cosine coefficients c_k with u = c_0 + sum c_k cos(k pi r).
  std::vector<double> coef(modes + 1, 0.0);
  coef[0] = u.atom;
  for (std::size_t c = 0; c < m; ++c) coef[0] += u.density[c] * h;
  for (std::size_t k = 1; k <= modes; ++k) {
    const double kp = static_cast<double>(k) * pi;
    double s = u.atom;
    for (std::size_t c = 0; c < m; ++c) {
      if (u.density[c] == 0.0) continue;
      s += u.density[c] * (std::sin(kp * (c + 1) * h) - std::sin(kp * c * h)) / kp;
    }
    const double lambda = 0.5 * kp * kp;
    const double source = k % 2 == 1 ? 2.0 * j * (-std::expm1(-lambda * t)) / lambda : 0.0;
    // G(r,0) - G(r,1) = sum_k 2 (1 - (-1)^k) e^{-lambda s} cos(k pi r).
    coef[k] = 2.0 * s * std::exp(-lambda * t) + 2.0 * source;
  }
  std::vector<double> out(m, coef[0]);
  for (std::size_t k = 1; k <= modes; ++k) {
    if (coef[k] == 0.0) continue;
    const double kp = static_cast<double>(k) * pi;
    for (std::size_t c = 0; c < m; ++c) {
      out[c] += coef[k] * (std::sin(kp * (c + 1) * h) - std::sin(kp * c * h)) / (kp * h);
    }
  }
  return out;
}

double stationary_density(double mass, double j, double r) {
  if (mass >= j) return mass + j - 2.0 * j * r;
  return edge_linear_density(mass, j, r);
}

double edge_linear_density(double mass, double j, double r) {
  const double edge = std::sqrt(mass / j);
  return std::max(2.0 * j * (edge - r), 0.0);
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2 == 1) ++n;
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}

double ks_distance(const std::vector<long>& sample, const std::vector<double>& law) {
  std::vector<double> counts(law.size(), 0.0);
  for (long v : sample) {
    if (v >= 0 && static_cast<std::size_t>(v) < counts.size()) ++counts[static_cast<std::size_t>(v)];
  }
  double emp = 0.0;
  double cdf = 0.0;
  double dist = 0.0;
  for (std::size_t k = 0; k < law.size(); ++k) {
    emp += counts[k] / static_cast<double>(sample.size());
    cdf += law[k];
    dist = std::max(dist, std::abs(emp - cdf));
  }
  return dist;
}

}  // namespace curres::oracle
