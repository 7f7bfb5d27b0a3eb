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
#include <string>
#include <vector>

#include "curres/particles.hpp"
#include "curres/rng.hpp"

namespace curres {

/// Non-increasing particle positions x_1 >= x_2 >= ... on the enlarged
/// lattice {-1, 0..N, N+1}. Only the prefix x_1..x_{N(x)} is stored; every
/// later entry is the sentinel -1. The first M(x) entries equal N+1
/// (particles removed through the right end).
class OrderedConfig {
 public:
  explicit OrderedConfig(long n);
  /// Entries x_1..x_k, non-increasing, each in {0..N+1}; trailing -1 allowed.
  OrderedConfig(long n, std::vector<long> entries);

  long lattice_size() const noexcept { return n_; }
  long n_active() const noexcept { return static_cast<long>(entries_.size()); }
  long m_exited() const noexcept { return m_; }
  /// x_i for i >= 1; -1 beyond N(x).
  long at(long i) const noexcept {
    return i <= n_active() ? entries_[static_cast<std::size_t>(i - 1)] : -1;
  }
  std::span<const long> entries() const noexcept { return entries_; }

  /// In-place a_label^mark.
  void apply(std::uint32_t label, int mark);

  friend bool operator==(const OrderedConfig& a, const OrderedConfig& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }

 private:
  long n_;
  long m_ = 0;
  std::vector<long> entries_;
};

/// Labels the particles of xi consecutively from the right.
OrderedConfig to_ordered(const Configuration& xi);
/// Occupation numbers of the entries inside {0..N}.
Configuration from_ordered(const OrderedConfig& x);

/// a_0^+ puts a particle at 0 (N grows by one); a_0^- sends the rightmost
/// physical particle to N+1 (no-op when none is left); a_i^+-, i >= 1,
/// displaces x_i by one when the target stays in {0..N}, then re-orders.
/// The re-ordering is realized by moving the first (for +) or last (for -)
/// entry of the run of entries equal to x_i.
OrderedConfig apply_operator(OrderedConfig x, std::uint32_t label, int mark);

/// Componentwise x_i <= y_i including the -1 tails.
bool ordered_leq(const OrderedConfig& x, const OrderedConfig& y);

/// F_eps(x; a) <= F_eps(x; b) at every site.
bool interface_leq(const Configuration& a, const Configuration& b);

struct TapeEvent {
  double time;
  std::uint32_t label;
  std::uint32_t index;  // position in the label's own stream
  int mark;
};

/// All clock events of labels 0..budget on [0, horizon], sorted by
/// (time, label, index).
class EventTape {
 public:
  EventTape(const ClockBundle& clocks, double horizon, long label_budget);

  /// N(x0) plus the number of + marks of label 0 up to the horizon: enough
  /// labels for any flow started from x0.
  static long budget_for(const ClockBundle& clocks, double horizon, long n_active0);

  std::span<const TapeEvent> events() const noexcept { return events_; }
  double horizon() const noexcept { return horizon_; }
  long label_budget() const noexcept { return budget_; }

 private:
  double horizon_;
  long budget_;
  std::vector<TapeEvent> events_;
};

enum class FlowKind { kFree, kTrue, kDeltaMinus, kDeltaPlus };

const char* flow_kind_name(FlowKind kind) noexcept;

/// Incremental evaluation of one flow over a tape. For the batched kinds the
/// label-0 operators of block [h B, (h+1) B) act after the block's
/// displacements (minus) or before them (plus). Stopping inside a block
/// applies displacements up to the stopping time; the block's label-0
/// operators are then withheld (minus) or already applied (plus).
class FlowRunner {
 public:
  FlowRunner(OrderedConfig x0, const EventTape& tape, FlowKind kind, double block_length = 0.0);

  /// Advances to microscopic time t (>= current, <= tape horizon).
  void advance_to(double t);
  double time() const noexcept { return time_; }
  const OrderedConfig& state() const noexcept { return x_; }

 private:
  void apply(const TapeEvent& e);
  std::size_t block_end_index(long h) const;

  OrderedConfig x_;
  const EventTape* tape_;
  FlowKind kind_;
  double block_length_;
  double time_ = 0.0;
  std::size_t next_ = 0;   // next tape event not yet swept
  long block_ = 0;
  std::size_t block_begin_ = 0;
  bool zeros_done_ = false;
};

/// Convenience: one flow from x0 to `horizon` (microscopic) with blocks of
/// macroscopic length delta, i.e. eps^-2 delta microscopic.
OrderedConfig flow(const OrderedConfig& x0, const ClockBundle& clocks, FlowKind kind,
                   double delta, double horizon);

struct SandwichViolation {
  long block = 0;       // coarse block boundary index m (time m eps^-2 delta)
  std::string pair;     // e.g. "coarse_minus<=fine_minus"
  std::string detail;
};

struct SandwichReport {
  bool passed = true;
  long boundaries = 0;
  long comparisons = 0;
  std::vector<SandwichViolation> violations;
};

/// Runs T^(delta,-), T^(delta',-), T, T^(delta',+), T^(delta,+) on one omega
/// and checks the chain of orderings at every coarse block boundary: in the
/// enlarged space, equality of N and M across all five, and the order of
/// the physical restrictions.
SandwichReport verify_sandwich(const OrderedConfig& x0, const ClockBundle& clocks,
                               double delta_coarse, double delta_fine, long n_blocks);

}  // namespace curres
