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

#include "curres/lattice.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "curres/error.hpp"

namespace curres {

Eigen::MatrixXd rw_kernel(long n, double t) {
  require(n >= 1, ErrorCode::kInvalidArgument, "rw_kernel needs N >= 1");
  require(t >= 0.0 && std::isfinite(t), ErrorCode::kInvalidArgument,
          "rw_kernel needs a finite t >= 0");
  const Eigen::Index sites = n + 1;
  if (t == 0.0) return Eigen::MatrixXd::Identity(sites, sites);
  // Generator (1/2) * Neumann Laplacian: eigenvectors cos(pi k (x + 1/2) / (N+1)),
  // eigenvalues cos(pi k / (N+1)) - 1.
  const double step = std::numbers::pi / static_cast<double>(sites);
  Eigen::MatrixXd modes(sites, sites);
  Eigen::VectorXd weights(sites);
  for (Eigen::Index k = 0; k < sites; ++k) {
    const double norm2 = k == 0 ? static_cast<double>(sites) : 0.5 * static_cast<double>(sites);
    weights[k] = std::exp((std::cos(step * static_cast<double>(k)) - 1.0) * t) / norm2;
    for (Eigen::Index x = 0; x < sites; ++x) {
      modes(x, k) = std::cos(step * static_cast<double>(k) * (static_cast<double>(x) + 0.5));
    }
  }
  Eigen::MatrixXd p = modes * weights.asDiagonal() * modes.transpose();
  return 0.5 * (p + p.transpose());
}

std::vector<double> mean_profile(const Eigen::MatrixXd& kernel,
                                 std::span<const int> occupations) {
  require(static_cast<Eigen::Index>(occupations.size()) == kernel.cols(),
          ErrorCode::kInvalidArgument, "occupation vector does not match the kernel size");
  Eigen::VectorXd xi(kernel.cols());
  for (Eigen::Index y = 0; y < xi.size(); ++y) xi[y] = occupations[static_cast<std::size_t>(y)];
  const Eigen::VectorXd w = kernel * xi;
  return {w.data(), w.data() + w.size()};
}

std::int64_t poisson_polynomial(int k, int m) {
  require(k >= 0 && m >= 0, ErrorCode::kInvalidArgument, "d_k(m) needs k, m >= 0");
  if (k > m) return 0;
  std::int64_t out = 1;
  for (int i = 0; i < k; ++i) out *= m - i;
  return out;
}

double duality_functional(std::span<const int> occupations, std::span<const int> walkers) {
  std::map<int, int> multiplicity;
  for (int x : walkers) {
    require(x >= 0 && x < static_cast<int>(occupations.size()), ErrorCode::kInvalidArgument,
            "walker outside the lattice");
    ++multiplicity[x];
  }
  double out = 1.0;
  for (const auto& [x, k] : multiplicity) {
    out *= static_cast<double>(poisson_polynomial(k, occupations[static_cast<std::size_t>(x)]));
  }
  return out;
}

namespace {

void enumerate_occupations(int sites, int remaining, std::vector<int>& current,
                           std::vector<std::vector<int>>& out) {
  const auto x = static_cast<int>(current.size());
  if (x == sites - 1) {
    current.push_back(remaining);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    current.push_back(k);
    enumerate_occupations(sites, remaining - k, current, out);
    current.pop_back();
  }
}

// E over the occupation chain started at xi of D(xi_t, walkers).
double occupation_side(std::span<const int> xi, std::span<const int> walkers, double t) {
  const int sites = static_cast<int>(xi.size());
  int total = 0;
  for (int v : xi) total += v;
  std::vector<std::vector<int>> states;
  std::vector<int> scratch;
  enumerate_occupations(sites, total, scratch, states);
  std::map<std::vector<int>, Eigen::Index> index;
  for (std::size_t s = 0; s < states.size(); ++s) index[states[s]] = static_cast<Eigen::Index>(s);

  const auto count = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(count, count);
  for (Eigen::Index s = 0; s < count; ++s) {
    const auto& eta = states[static_cast<std::size_t>(s)];
    for (int x = 0; x < sites; ++x) {
      if (eta[x] == 0) continue;
      for (int dir : {-1, 1}) {
        const int y = x + dir;
        if (y < 0 || y >= sites) continue;
        auto next = eta;
        --next[x];
        ++next[y];
        const double rate = 0.5 * eta[x];
        q(s, index.at(next)) += rate;
        q(s, s) -= rate;
      }
    }
  }
  const Eigen::MatrixXd p = (t * q).exp();
  const Eigen::Index start = index.at(std::vector<int>(xi.begin(), xi.end()));
  double out = 0.0;
  for (Eigen::Index s = 0; s < count; ++s) {
    out += p(start, s) * duality_functional(states[static_cast<std::size_t>(s)], walkers);
  }
  return out;
}

// E over labeled independent walkers started at `walkers` of D(xi, x_t).
double walker_side(std::span<const int> xi, std::span<const int> walkers, double t) {
  const int sites = static_cast<int>(xi.size());
  const int m = static_cast<int>(walkers.size());
  Eigen::Index count = 1;
  for (int i = 0; i < m; ++i) count *= sites;
  auto decode = [&](Eigen::Index s) {
    std::vector<int> pos(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      pos[static_cast<std::size_t>(i)] = static_cast<int>(s % sites);
      s /= sites;
    }
    return pos;
  };
  auto encode = [&](const std::vector<int>& pos) {
    Eigen::Index s = 0;
    for (int i = m - 1; i >= 0; --i) s = s * sites + pos[static_cast<std::size_t>(i)];
    return s;
  };
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(count, count);
  for (Eigen::Index s = 0; s < count; ++s) {
    const auto pos = decode(s);
    for (int i = 0; i < m; ++i) {
      for (int dir : {-1, 1}) {
        auto next = pos;
        next[static_cast<std::size_t>(i)] += dir;
        if (next[static_cast<std::size_t>(i)] < 0 || next[static_cast<std::size_t>(i)] >= sites) {
          continue;
        }
        q(s, encode(next)) += 0.5;
        q(s, s) -= 0.5;
      }
    }
  }
  const Eigen::MatrixXd p = (t * q).exp();
  const Eigen::Index start = encode(std::vector<int>(walkers.begin(), walkers.end()));
  double out = 0.0;
  for (Eigen::Index s = 0; s < count; ++s) {
    out += p(start, s) * duality_functional(xi, decode(s));
  }
  return out;
}

}  // namespace

DualityResult duality_check(std::span<const int> occupations, std::span<const int> walkers,
                            double t) {
  require(t >= 0.0, ErrorCode::kInvalidArgument, "duality time must be nonnegative");
  require(occupations.size() >= 2, ErrorCode::kInvalidArgument, "duality needs N >= 1");
  const long n = static_cast<long>(occupations.size()) - 1;
  int total = 0;
  for (int v : occupations) {
    require(v >= 0, ErrorCode::kInvalidArgument, "occupations must be nonnegative");
    total += v;
  }
  if (n > kDualityMaxSites || total > kDualityMaxParticles ||
      static_cast<int>(walkers.size()) > kDualityMaxWalkers) {
    fail(ErrorCode::kSizeLimit, "duality oracle limited to N <= 4, |xi| <= 3, |x| <= 2 (got N = " +
                                    std::to_string(n) + ", |xi| = " + std::to_string(total) +
                                    ", |x| = " + std::to_string(walkers.size()) + ")");
  }
  for (int x : walkers) {
    require(x >= 0 && x <= n, ErrorCode::kInvalidArgument, "walker outside the lattice");
  }
  return {occupation_side(occupations, walkers, t), walker_side(occupations, walkers, t)};
}

}  // namespace curres
