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

#include "curres/particles.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "curres/error.hpp"

namespace curres {

Configuration::Configuration(long n) {
  require(n >= 1, ErrorCode::kInvalidArgument, "lattice needs N >= 1");
  occ_.assign(static_cast<std::size_t>(n + 1), 0);
}

Configuration Configuration::from_occupations(std::vector<int> occupations) {
  require(occupations.size() >= 2, ErrorCode::kInvalidArgument, "lattice needs N >= 1");
  Configuration out(static_cast<long>(occupations.size()) - 1);
  for (std::size_t x = 0; x < occupations.size(); ++x) {
    require(occupations[x] >= 0, ErrorCode::kInvalidArgument, "occupations must be nonnegative");
    out.count_ += occupations[x];
  }
  out.occ_ = std::move(occupations);
  out.scan_edge_from(out.lattice_size());
  return out;
}

void Configuration::add(long x, int k) {
  require(x >= 0 && x <= lattice_size() && k >= 0, ErrorCode::kInvalidArgument,
          "invalid particle addition");
  if (k == 0) return;
  occ_[static_cast<std::size_t>(x)] += k;
  count_ += k;
  edge_ = std::max(edge_, x);
}

bool Configuration::remove(long x) {
  require(x >= 0 && x <= lattice_size(), ErrorCode::kInvalidArgument, "site out of range");
  if (occ_[static_cast<std::size_t>(x)] == 0) return false;
  --occ_[static_cast<std::size_t>(x)];
  --count_;
  if (x == edge_ && occ_[static_cast<std::size_t>(x)] == 0) scan_edge_from(x);
  return true;
}

bool Configuration::remove_rightmost() {
  if (edge_ < 0) return false;
  return remove(edge_);
}

std::optional<long> Configuration::recompute_edge() const noexcept {
  for (long x = lattice_size(); x >= 0; --x) {
    if (occ_[static_cast<std::size_t>(x)] > 0) return x;
  }
  return std::nullopt;
}

SimParams::SimParams(long n_sites_minus_one, double current, std::uint64_t seed_value, double t)
    : n(n_sites_minus_one), j(current), seed(seed_value), horizon(t) {
  require(n >= 2, ErrorCode::kInvalidArgument, "simulation needs N >= 2");
  require(j >= 0.0 && std::isfinite(j), ErrorCode::kInvalidArgument, "current must be >= 0");
  require(horizon >= 0.0 && std::isfinite(horizon), ErrorCode::kInvalidArgument,
          "horizon must be >= 0");
}

long SimParams::ell() const noexcept {
  return std::max(1L, static_cast<long>(std::floor(std::pow(static_cast<double>(n),
                                                            constants.b) + 1e-9)));
}

double block_average(const Configuration& xi, long x, long ell) {
  require(ell >= 1 && x >= 0 && x + ell - 1 <= xi.lattice_size(), ErrorCode::kInvalidArgument,
          "block window outside the lattice");
  long sum = 0;
  for (long y = x; y < x + ell; ++y) sum += xi.at(y);
  return static_cast<double>(sum) / static_cast<double>(ell);
}

InitialFidelity initial_fidelity(const Configuration& xi, const MacroProfile& rho_init,
                                 const SimParams& params) {
  const long n = params.n;
  const long ell = std::min(params.ell(), n);
  const double eps = params.eps();
  std::vector<long> prefix(static_cast<std::size_t>(n + 2), 0);
  for (long x = 0; x <= n; ++x) prefix[x + 1] = prefix[x] + xi.at(x);
  InitialFidelity out{0.0, std::nullopt};
  for (long x = 0; x + ell <= n; ++x) {
    const double micro = static_cast<double>(prefix[x + ell] - prefix[x]) / static_cast<double>(ell);
    const double macro = macro_block_average(rho_init, x, ell, eps);
    out.block_deviation = std::max(out.block_deviation, std::abs(micro - macro));
  }
  if (const auto edge = profile_edge(rho_init)) {
    const auto micro_edge = xi.edge();
    out.edge_deviation = micro_edge ? std::abs(eps * static_cast<double>(*micro_edge) - *edge)
                                    : *edge;
  }
  return out;
}

Configuration sample_initial(const MacroProfile& rho_init, const SimParams& params) {
  const long n = params.n;
  const double eps = params.eps();
  Configuration xi(n);
  const double total = rho_init.total_mass();
  const long particles = std::lround(total / eps);
  const auto dens = rho_init.density();
  const double h = rho_init.cell_width();
  const std::size_t cells = rho_init.cells();
  // Cumulative mass C(r) = atom + bulk - tail(r); walk the cells once.
  std::size_t k = 0;
  for (long m = 1; m <= particles; ++m) {
    const double q = (static_cast<double>(m) - 0.5) / static_cast<double>(particles) * total;
    double r = 0.0;
    if (q > rho_init.atom_mass()) {
      auto cum_at = [&](std::size_t c) {
        return rho_init.atom_mass() + rho_init.bulk_mass() - rho_init.boundary_tail(c);
      };
      while (k + 1 < cells && (cum_at(k + 1) < q || dens[k] == 0.0)) ++k;
      r = dens[k] > 0.0 ? static_cast<double>(k) * h + (q - cum_at(k)) / dens[k]
                        : static_cast<double>(k) * h;
      r = std::clamp(r, static_cast<double>(k) * h, static_cast<double>(k + 1) * h);
    }
    const long site = std::min(n, static_cast<long>(std::floor(r / eps + 1e-12)));
    xi.add(site);
  }
  const InitialFidelity fid = initial_fidelity(xi, rho_init, params);
  const double bound = std::pow(eps, params.constants.a);
  if (fid.block_deviation > bound) {
    fail(ErrorCode::kAssumptionViolated,
         "block averages deviate by " + std::to_string(fid.block_deviation) + " > eps^a = " +
             std::to_string(bound) + " at N = " + std::to_string(n));
  }
  if (fid.edge_deviation && *fid.edge_deviation > bound) {
    fail(ErrorCode::kAssumptionViolated,
         "edge misplaced by " + std::to_string(*fid.edge_deviation) + " > eps^a = " +
             std::to_string(bound) + " at N = " + std::to_string(n));
  }
  return xi;
}

std::vector<double> empirical_interface(const Configuration& xi, double eps) {
  const long n = xi.lattice_size();
  std::vector<double> out(static_cast<std::size_t>(n + 1));
  long acc = 0;
  for (long x = n; x >= 0; --x) {
    acc += xi.at(x);
    out[static_cast<std::size_t>(x)] = eps * static_cast<double>(acc);
  }
  return out;
}

ParticleProcess::ParticleProcess(const Configuration& init, const ClockBundle& clocks,
                                 double start_time, bool reservoirs)
    : clocks_(&clocks),
      n_(init.lattice_size()),
      reservoirs_(reservoirs),
      time_(start_time),
      reservoir_(clocks.start(0, start_time)) {
  const auto expected = static_cast<std::size_t>(init.count()) + 1;
  cursors_.reserve(expected);
  position_.reserve(expected);
  alive_.reserve(expected);
  cursors_.push_back({});
  position_.push_back(-1);
  for (long x = n_; x >= 0; --x) {
    for (int i = 0; i < init.at(x); ++i) spawn(x);
  }
}

Configuration ParticleProcess::config() const {
  std::vector<int> occ(static_cast<std::size_t>(n_ + 1), 0);
  for (std::uint32_t id : alive_) ++occ[static_cast<std::size_t>(position_[id])];
  return Configuration::from_occupations(std::move(occ));
}

void ParticleProcess::spawn(long site) {
  const auto label = static_cast<std::uint32_t>(cursors_.size());
  cursors_.push_back(clocks_->start(label, time_));
  position_.push_back(site);
  alive_.push_back(label);
}

void ParticleProcess::kill_at_edge() {
  // Rightmost particle; among several at the edge, the smallest label.
  std::size_t best = 0;
  for (std::size_t i = 1; i < alive_.size(); ++i) {
    const long a = position_[alive_[i]];
    const long b = position_[alive_[best]];
    if (a > b || (a == b && alive_[i] < alive_[best])) best = i;
  }
  position_[alive_[best]] = -1;
  alive_.erase(alive_.begin() + static_cast<long>(best));
}

void ParticleProcess::add_at_origin(long k) {
  require(k >= 0, ErrorCode::kInvalidArgument, "cannot add a negative number of particles");
  for (long i = 0; i < k; ++i) spawn(0);
}

long ParticleProcess::remove_rightmost(long k) {
  long removed = 0;
  for (; removed < k && !alive_.empty(); ++removed) kill_at_edge();
  return removed;
}

void ParticleProcess::advance_walks(double limit, bool inclusive) {
  const long n = n_;
  std::uint64_t events = 0;
  for (std::uint32_t id : alive_) {
    ClockCursor& c = cursors_[id];
    long x = position_[id];
    while (c.time < limit || (inclusive && c.time == limit)) {
      const long y = x + c.mark;
      if (y >= 0 && y <= n) x = y;
      clocks_->advance(c);
      ++events;
    }
    position_[id] = x;
  }
  stats_.walk_events += events;
}

void ParticleProcess::run_until(double until) {
  if (reservoirs_) {
    while (reservoir_.time <= until) {
      advance_walks(reservoir_.time, false);
      time_ = reservoir_.time;
      if (reservoir_.mark > 0) {
        spawn(0);
        ++stats_.births;
      } else if (alive_.empty()) {
        ++stats_.aborted_deaths;
      } else {
        kill_at_edge();
        ++stats_.deaths;
      }
      clocks_->advance(reservoir_);
    }
  }
  advance_walks(until, true);
  time_ = std::max(time_, until);
}

Configuration step_true(const Configuration& xi, const ClockBundle& clocks, double from,
                        double until, SimStats* stats) {
  require(until >= from, ErrorCode::kInvalidArgument, "until must not precede the start");
  ParticleProcess process(xi, clocks, from, true);
  process.run_until(until);
  if (stats != nullptr) *stats = process.stats();
  return process.config();
}

Configuration step_free(const Configuration& xi, const ClockBundle& clocks, double from,
                        double until) {
  require(until >= from, ErrorCode::kInvalidArgument, "until must not precede the start");
  ParticleProcess process(xi, clocks, from, false);
  process.run_until(until);
  return process.config();
}

std::vector<ReservoirEvent> reservoir_events(const ClockBundle& clocks, double from,
                                             double until) {
  std::vector<ReservoirEvent> out;
  ClockCursor c = clocks.start(0, 0.0);
  while (c.time < until) {
    if (c.time >= from) out.push_back({c.time, c.mark});
    clocks.advance(c);
  }
  return out;
}

CountPath particle_count_path(long n0, std::span<const ReservoirEvent> events) {
  require(n0 >= 0, ErrorCode::kInvalidArgument, "initial count must be nonnegative");
  CountPath path{n0, {}, {}};
  path.times.reserve(events.size());
  path.values.reserve(events.size());
  long n = n0;
  for (const auto& e : events) {
    if (n + e.mark >= 0) n += e.mark;
    path.times.push_back(e.time);
    path.values.push_back(n);
  }
  return path;
}

std::vector<BlockCounts> block_counts(long n0, std::span<const ReservoirEvent> events,
                                      double block_length, long blocks) {
  require(block_length > 0.0 && blocks >= 0, ErrorCode::kInvalidArgument,
          "invalid block layout");
  std::vector<BlockCounts> out(static_cast<std::size_t>(blocks));
  long n = n0;
  for (const auto& e : events) {
    const auto k = static_cast<long>(std::floor(e.time / block_length));
    if (k >= blocks) break;
    const bool moves = n + e.mark >= 0;
    if (moves) n += e.mark;
    if (k < 0) continue;
    auto& b = out[static_cast<std::size_t>(k)];
    if (e.mark > 0) {
      ++b.plus_marks;
      ++b.up;
    } else {
      ++b.minus_marks;
      if (moves) ++b.down;
    }
  }
  return out;
}

bool good_set_check(std::span<const ReservoirEvent> events, double j, double delta, double eps,
                    double T, double gamma) {
  require(delta > 0.0 && eps > 0.0 && T >= 0.0, ErrorCode::kInvalidArgument,
          "invalid good-set parameters");
  const long last = static_cast<long>(std::floor(T / delta + 1e-9));
  const double mean = j * delta / eps;
  const double bound = std::pow(eps, -0.5 - gamma);
  const auto counts = block_counts(0, events, delta / (eps * eps), last + 1);
  for (const auto& b : counts) {
    if (std::abs(static_cast<double>(b.minus_marks) - mean) > bound) return false;
    if (std::abs(static_cast<double>(b.plus_marks) - mean) > bound) return false;
  }
  return true;
}

DeltaProcess::DeltaProcess(const Configuration& init, const ClockBundle& clocks, DeltaSide side,
                           double j, double delta, long first_block)
    : clocks_(&clocks),
      side_(side),
      block_length_(delta * static_cast<double>(init.lattice_size()) *
                    static_cast<double>(init.lattice_size())),
      block_(first_block),
      walks_(init, clocks, static_cast<double>(first_block) * block_length_, false) {
  require(delta > 0.0 && first_block >= 0, ErrorCode::kInvalidArgument,
          "invalid delta-process block layout");
  const double eps = 1.0 / static_cast<double>(init.lattice_size());
  require(std::abs(clocks.reservoir_rate() - 2.0 * j * eps) <= 1e-12 * (1.0 + j),
          ErrorCode::kInvalidArgument, "clock bundle was built for a different current or lattice");
}

void DeltaProcess::run_blocks(long blocks) {
  for (long i = 0; i < blocks; ++i, ++block_) {
    const double start = static_cast<double>(block_) * block_length_;
    const double end = static_cast<double>(block_ + 1) * block_length_;
    const auto events = reservoir_events(*clocks_, start, end);
    long up = 0;
    long down = 0;
    long n = walks_.config().count();
    for (const auto& e : events) {
      if (e.mark > 0) {
        ++n;
        ++up;
      } else if (n > 0) {
        --n;
        ++down;
      }
    }
    if (side_ == DeltaSide::kMinus) walks_.run_until(end);
    walks_.add_at_origin(up);
    walks_.remove_rightmost(down);
    if (side_ == DeltaSide::kPlus) walks_.run_until(end);
  }
}

Configuration step_delta(const Configuration& xi, DeltaSide side, const ClockBundle& clocks,
                         long k, double j, double delta) {
  DeltaProcess process(xi, clocks, side, j, delta, k);
  process.run_blocks(1);
  return process.config();
}

}  // namespace curres
