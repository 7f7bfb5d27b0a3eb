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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "curres/profile.hpp"
#include "curres/rng.hpp"

namespace curres {

/// Occupation numbers on {0..N} with the particle count and the rightmost
/// occupied site kept up to date.
class Configuration {
 public:
  explicit Configuration(long n);
  static Configuration from_occupations(std::vector<int> occupations);

  long lattice_size() const noexcept { return static_cast<long>(occ_.size()) - 1; }
  int at(long x) const noexcept { return occ_[static_cast<std::size_t>(x)]; }
  std::span<const int> occupations() const noexcept { return occ_; }
  long count() const noexcept { return count_; }
  std::optional<long> edge() const noexcept {
    return edge_ < 0 ? std::nullopt : std::optional<long>(edge_);
  }

  void add(long x, int k = 1);
  /// Removes one particle at x; false when the site is empty.
  bool remove(long x);
  /// Removes one particle from the edge; false (no-op) when empty.
  bool remove_rightmost();
  /// Moves one particle from `from` (occupied) to `to`.
  void move(long from, long to) noexcept {
    --occ_[static_cast<std::size_t>(from)];
    ++occ_[static_cast<std::size_t>(to)];
    if (to > edge_) {
      edge_ = to;
    } else if (from == edge_ && occ_[static_cast<std::size_t>(from)] == 0) {
      scan_edge_from(from);
    }
  }

  /// Edge recomputed from the occupations, ignoring the cache.
  std::optional<long> recompute_edge() const noexcept;

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.occ_ == b.occ_;
  }

 private:
  void scan_edge_from(long x) noexcept {
    while (x >= 0 && occ_[static_cast<std::size_t>(x)] == 0) --x;
    edge_ = x;
  }

  std::vector<int> occ_;
  long count_ = 0;
  long edge_ = -1;
};

/// Constants of the initial-datum assumptions.
struct AssumptionConstants {
  double a = 1.0 / 20.0;
  double b = 9.0 / 10.0;
  double a_star = 1.0 / 100.0;
  double gamma = 1.0 / 20.0;
};

struct SimParams {
  long n;             // eps^-1
  double j;
  std::uint64_t seed;
  double horizon;     // macroscopic time; microscopic horizon * n^2
  AssumptionConstants constants{};

  SimParams(long n_sites_minus_one, double current, std::uint64_t seed_value, double t);

  double eps() const noexcept { return 1.0 / static_cast<double>(n); }
  double micro_horizon() const noexcept {
    return horizon * static_cast<double>(n) * static_cast<double>(n);
  }
  /// Block length floor(eps^-b).
  long ell() const noexcept;
};

/// (1/ell) * sum_{y=x}^{x+ell-1} xi(y).
double block_average(const Configuration& xi, long x, long ell);

/// Deterministic quantile placement: particle m of n = round(F(0)/eps) sits
/// at the site of the (m - 1/2)/n quantile of the mass of rho_init (atom
/// included). Throws kAssumptionViolated when the block averages deviate from
/// those of rho_init by more than eps^a, or when rho_init has an edge and the
/// configuration's edge misses it by more than eps^a.
Configuration sample_initial(const MacroProfile& rho_init, const SimParams& params);

struct InitialFidelity {
  double block_deviation;                // max_x |A_ell(x,xi) - A'_ell(x,rho)|
  std::optional<double> edge_deviation;  // |eps R_xi - R(rho)|
};
InitialFidelity initial_fidelity(const Configuration& xi, const MacroProfile& rho_init,
                                 const SimParams& params);

/// x -> eps * sum_{y >= x} xi(y).
std::vector<double> empirical_interface(const Configuration& xi, double eps);

struct SimStats {
  std::uint64_t walk_events = 0;  // displacement clock rings, suppressed or not
  std::uint64_t births = 0;
  std::uint64_t deaths = 0;
  std::uint64_t aborted_deaths = 0;  // death clock rang on an empty system
};

/// Exact event-driven simulation on one clock realization. Particle ids are
/// labels >= 1: the initial particles take 1..n in decreasing order of
/// position, newborns take the next free label and start their clock at
/// their birth time. Label 0 drives births (+) and deaths (-) at the edge.
/// Times are microscopic.
///
/// Displacements of distinct particles commute, so between two label-0
/// events every particle is advanced along its own clock independently; the
/// configuration at each label-0 event is the one the time-ordered product
/// would give. A displacement at exactly the time of a label-0 event is
/// applied after it (ties go to the smaller label).
class ParticleProcess {
 public:
  ParticleProcess(const Configuration& init, const ClockBundle& clocks, double start_time,
                  bool reservoirs);

  /// Processes every event with time <= until.
  void run_until(double until);

  /// Instantaneous changes used by the batched processes.
  void add_at_origin(long k);
  /// Removes up to k rightmost particles; returns how many were removed.
  long remove_rightmost(long k);

  double time() const noexcept { return time_; }
  long count() const noexcept { return static_cast<long>(alive_.size()); }
  /// Occupation numbers at time(); rebuilt from the particle positions.
  Configuration config() const;
  const SimStats& stats() const noexcept { return stats_; }

 private:
  void spawn(long site);
  void kill_at_edge();
  void advance_walks(double limit, bool inclusive);

  const ClockBundle* clocks_;
  long n_;
  bool reservoirs_;
  double time_;
  ClockCursor reservoir_;
  std::vector<ClockCursor> cursors_;  // by label; entry 0 unused
  std::vector<long> position_;        // by label
  std::vector<std::uint32_t> alive_;  // labels of living particles
  SimStats stats_;
};

/// True process on [from, until] (microscopic times).
Configuration step_true(const Configuration& xi, const ClockBundle& clocks, double from,
                        double until, SimStats* stats = nullptr);
/// Independent walks only; label 0 is ignored.
Configuration step_free(const Configuration& xi, const ClockBundle& clocks, double from,
                        double until);

/// Label-0 events as (time, mark).
struct ReservoirEvent {
  double time;
  int mark;
};
/// Label-0 events in [from, until).
std::vector<ReservoirEvent> reservoir_events(const ClockBundle& clocks, double from,
                                             double until);

struct CountPath {
  long initial = 0;
  std::vector<double> times;
  std::vector<long> values;  // count right after each event
};
/// Reflected walk: n <- n + mark unless that would go below 0.
CountPath particle_count_path(long n0, std::span<const ReservoirEvent> events);

struct BlockCounts {
  long up = 0;    // N_{k;+}: up-jumps of the reflected count
  long down = 0;  // N_{k;-}: down-jumps of the reflected count
  long plus_marks = 0;   // B0_k
  long minus_marks = 0;  // A0_k
};
/// Counts of block k = [k b, (k+1) b), b = block_length, for `blocks` blocks,
/// with the reflected count started at n0 at time 0.
std::vector<BlockCounts> block_counts(long n0, std::span<const ReservoirEvent> events,
                                      double block_length, long blocks);

/// |A0_k - eps^-1 j delta| and |B0_k - eps^-1 j delta| <= eps^(-1/2 - gamma)
/// for every k with k delta <= T.
bool good_set_check(std::span<const ReservoirEvent> events, double j, double delta, double eps,
                    double T, double gamma);

enum class DeltaSide { kMinus, kPlus };

/// The batched-reservoir processes. Between block boundaries particles are
/// independent walks; the block's births and deaths (the up- and down-jumps
/// of the reflected count driven by label 0) are applied at the block end
/// (minus) or start (plus), births first, deaths taken from the right.
class DeltaProcess {
 public:
  DeltaProcess(const Configuration& init, const ClockBundle& clocks, DeltaSide side, double j,
               double delta, long first_block = 0);

  void run_blocks(long blocks);
  long block() const noexcept { return block_; }
  Configuration config() const { return walks_.config(); }
  double block_length() const noexcept { return block_length_; }

 private:
  const ClockBundle* clocks_;
  DeltaSide side_;
  double block_length_;
  long block_;
  ParticleProcess walks_;
};

/// One block [k b, (k+1) b) of the batched process started from xi at its
/// start; the count walk restarts from |xi| (it is Markov).
Configuration step_delta(const Configuration& xi, DeltaSide side, const ClockBundle& clocks,
                         long k, double j, double delta);

}  // namespace curres
