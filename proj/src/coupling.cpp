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

#include "curres/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "curres/error.hpp"

namespace curres {

OrderedConfig::OrderedConfig(long n) : n_(n) {
  require(n >= 1, ErrorCode::kInvalidArgument, "lattice needs N >= 1");
}

OrderedConfig::OrderedConfig(long n, std::vector<long> entries) : OrderedConfig(n) {
  while (!entries.empty() && entries.back() == -1) entries.pop_back();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    require(entries[i] >= 0 && entries[i] <= n + 1, ErrorCode::kInvalidArgument,
            "ordered entries must lie in {0..N+1} before the -1 tail");
    require(i == 0 || entries[i] <= entries[i - 1], ErrorCode::kInvalidArgument,
            "ordered entries must be non-increasing");
    if (entries[i] == n + 1) ++m_;
  }
  entries_ = std::move(entries);
}

void OrderedConfig::apply(std::uint32_t label, int mark) {
  const long size = n_active();
  if (label == 0) {
    if (mark > 0) {
      entries_.push_back(0);
    } else if (m_ < size) {
      entries_[static_cast<std::size_t>(m_)] = n_ + 1;
      ++m_;
    }
    return;
  }
  const long i = static_cast<long>(label);
  if (i > size || i <= m_) return;
  auto idx = static_cast<std::size_t>(i - 1);
  const long v = entries_[idx];
  if (mark > 0) {
    if (v + 1 > n_) return;
    while (idx > static_cast<std::size_t>(m_) && entries_[idx - 1] == v) --idx;
    entries_[idx] = v + 1;
  } else {
    if (v - 1 < 0) return;
    while (idx + 1 < entries_.size() && entries_[idx + 1] == v) ++idx;
    entries_[idx] = v - 1;
  }
}

OrderedConfig to_ordered(const Configuration& xi) {
  std::vector<long> entries;
  entries.reserve(static_cast<std::size_t>(xi.count()));
  for (long x = xi.lattice_size(); x >= 0; --x) entries.insert(entries.end(), xi.at(x), x);
  return OrderedConfig(xi.lattice_size(), std::move(entries));
}

Configuration from_ordered(const OrderedConfig& x) {
  const long n = x.lattice_size();
  std::vector<int> occ(static_cast<std::size_t>(n + 1), 0);
  for (long v : x.entries()) {
    if (v >= 0 && v <= n) ++occ[static_cast<std::size_t>(v)];
  }
  return Configuration::from_occupations(std::move(occ));
}

OrderedConfig apply_operator(OrderedConfig x, std::uint32_t label, int mark) {
  require(mark == 1 || mark == -1, ErrorCode::kInvalidArgument, "mark must be +1 or -1");
  x.apply(label, mark);
  return x;
}

bool ordered_leq(const OrderedConfig& x, const OrderedConfig& y) {
  require(x.lattice_size() == y.lattice_size(), ErrorCode::kInvalidArgument,
          "ordered configurations live on different lattices");
  const long len = std::max(x.n_active(), y.n_active());
  for (long i = 1; i <= len; ++i) {
    if (x.at(i) > y.at(i)) return false;
  }
  return true;
}

bool interface_leq(const Configuration& a, const Configuration& b) {
  require(a.lattice_size() == b.lattice_size(), ErrorCode::kInvalidArgument,
          "configurations live on different lattices");
  long fa = 0;
  long fb = 0;
  for (long x = a.lattice_size(); x >= 0; --x) {
    fa += a.at(x);
    fb += b.at(x);
    if (fa > fb) return false;
  }
  return true;
}

long EventTape::budget_for(const ClockBundle& clocks, double horizon, long n_active0) {
  long births = 0;
  for (ClockCursor c = clocks.start(0, 0.0); c.time <= horizon; clocks.advance(c)) {
    if (c.mark > 0) ++births;
  }
  return n_active0 + births;
}

EventTape::EventTape(const ClockBundle& clocks, double horizon, long label_budget)
    : horizon_(horizon), budget_(label_budget) {
  require(horizon >= 0.0 && label_budget >= 0, ErrorCode::kInvalidArgument,
          "invalid tape horizon or label budget");
  events_.reserve(static_cast<std::size_t>((static_cast<double>(label_budget) + 1.0) *
                                           (horizon + 1.0) * 1.05));
  for (long label = 0; label <= label_budget; ++label) {
    ClockCursor c = clocks.start(static_cast<std::uint32_t>(label), 0.0);
    while (c.time <= horizon) {
      events_.push_back({c.time, c.label, static_cast<std::uint32_t>(c.index - 1), c.mark});
      clocks.advance(c);
    }
  }
  std::sort(events_.begin(), events_.end(), [](const TapeEvent& a, const TapeEvent& b) {
    if (a.time != b.time) return a.time < b.time;
    if (a.label != b.label) return a.label < b.label;
    return a.index < b.index;
  });
}

const char* flow_kind_name(FlowKind kind) noexcept {
  switch (kind) {
    case FlowKind::kFree: return "free";
    case FlowKind::kTrue: return "true";
    case FlowKind::kDeltaMinus: return "delta_minus";
    case FlowKind::kDeltaPlus: return "delta_plus";
  }
  return "unknown";
}

FlowRunner::FlowRunner(OrderedConfig x0, const EventTape& tape, FlowKind kind,
                       double block_length)
    : x_(std::move(x0)), tape_(&tape), kind_(kind), block_length_(block_length) {
  const bool batched = kind == FlowKind::kDeltaMinus || kind == FlowKind::kDeltaPlus;
  require(!batched || block_length > 0.0, ErrorCode::kInvalidArgument,
          "batched flows need a positive block length");
}

void FlowRunner::apply(const TapeEvent& e) {
  if (e.label == 0) {
    x_.apply(0, e.mark);
    if (x_.n_active() > tape_->label_budget()) {
      fail(ErrorCode::kInternal, "label budget exhausted");
    }
    return;
  }
  if (static_cast<long>(e.label) > x_.n_active()) return;
  x_.apply(e.label, e.mark);
}

std::size_t FlowRunner::block_end_index(long h) const {
  const double end = static_cast<double>(h + 1) * block_length_;
  const auto events = tape_->events();
  const auto it = std::lower_bound(events.begin() + static_cast<long>(block_begin_), events.end(),
                                   end, [](const TapeEvent& e, double t) { return e.time < t; });
  return static_cast<std::size_t>(it - events.begin());
}

void FlowRunner::advance_to(double t) {
  require(t >= time_, ErrorCode::kInvalidArgument, "flows only run forward");
  require(t <= tape_->horizon() * (1.0 + 1e-12), ErrorCode::kInvalidArgument,
          "flow time beyond the tape horizon");
  const auto events = tape_->events();
  if (kind_ == FlowKind::kFree || kind_ == FlowKind::kTrue) {
    while (next_ < events.size() && events[next_].time <= t) {
      const TapeEvent& e = events[next_++];
      if (e.label == 0 && kind_ == FlowKind::kFree) continue;
      apply(e);
    }
    time_ = t;
    return;
  }
  const bool minus = kind_ == FlowKind::kDeltaMinus;
  // Boundaries are compared with a relative slack so that m * B and
  // (m k) * (B / k) count as the same time.
  const double slack = 1e-9 * block_length_;
  while (true) {
    const double block_start = static_cast<double>(block_) * block_length_;
    const double block_end = static_cast<double>(block_ + 1) * block_length_;
    if (t <= block_start + slack) break;
    const std::size_t end = block_end_index(block_);
    if (!minus && !zeros_done_) {
      for (std::size_t i = block_begin_; i < end; ++i) {
        if (events[i].label == 0) apply(events[i]);
      }
      zeros_done_ = true;
    }
    const double limit = std::min(t, block_end);
    while (next_ < end && events[next_].time <= limit) {
      if (events[next_].label != 0) apply(events[next_]);
      ++next_;
    }
    if (t < block_end - slack) break;
    next_ = end;
    if (minus) {
      for (std::size_t i = block_begin_; i < end; ++i) {
        if (events[i].label == 0) apply(events[i]);
      }
    }
    ++block_;
    block_begin_ = end;
    zeros_done_ = false;
  }
  time_ = t;
}

OrderedConfig flow(const OrderedConfig& x0, const ClockBundle& clocks, FlowKind kind,
                   double delta, double horizon) {
  const double n = static_cast<double>(x0.lattice_size());
  const EventTape tape(clocks, horizon, EventTape::budget_for(clocks, horizon, x0.n_active()));
  FlowRunner runner(x0, tape, kind, delta * n * n);
  runner.advance_to(horizon);
  return runner.state();
}

namespace {

std::string describe(const OrderedConfig& x) {
  std::ostringstream out;
  out << "N=" << x.n_active() << " M=" << x.m_exited() << " x=(";
  for (long i = 1; i <= x.n_active(); ++i) out << (i > 1 ? "," : "") << x.at(i);
  out << ")";
  return out.str();
}

}  // namespace

SandwichReport verify_sandwich(const OrderedConfig& x0, const ClockBundle& clocks,
                               double delta_coarse, double delta_fine, long n_blocks) {
  require(delta_fine > 0.0 && delta_coarse >= delta_fine && n_blocks >= 0,
          ErrorCode::kInvalidArgument, "invalid sandwich layout");
  const double ratio = delta_coarse / delta_fine;
  require(std::abs(ratio - std::round(ratio)) < 1e-9 * ratio, ErrorCode::kInvalidArgument,
          "delta_coarse must be an integer multiple of delta_fine");
  const double n = static_cast<double>(x0.lattice_size());
  const double coarse = delta_coarse * n * n;
  const double fine = delta_fine * n * n;
  const double horizon = coarse * static_cast<double>(n_blocks);
  const EventTape tape(clocks, horizon, EventTape::budget_for(clocks, horizon, x0.n_active()));

  std::vector<FlowRunner> flows;
  flows.emplace_back(x0, tape, FlowKind::kDeltaMinus, coarse);
  flows.emplace_back(x0, tape, FlowKind::kDeltaMinus, fine);
  flows.emplace_back(x0, tape, FlowKind::kTrue);
  flows.emplace_back(x0, tape, FlowKind::kDeltaPlus, fine);
  flows.emplace_back(x0, tape, FlowKind::kDeltaPlus, coarse);
  static const char* const kNames[] = {"coarse_minus", "fine_minus", "true", "fine_plus",
                                       "coarse_plus"};

  SandwichReport report;
  for (long m = 1; m <= n_blocks; ++m) {
    const double t = coarse * static_cast<double>(m);
    for (auto& f : flows) f.advance_to(t);
    ++report.boundaries;
    for (std::size_t k = 0; k + 1 < flows.size(); ++k) {
      const OrderedConfig& lo = flows[k].state();
      const OrderedConfig& hi = flows[k + 1].state();
      const std::string pair = std::string(kNames[k]) + "<=" + kNames[k + 1];
      ++report.comparisons;
      if (!ordered_leq(lo, hi)) {
        report.violations.push_back({m, pair, "enlarged order fails: " + describe(lo) + " vs " +
                                                  describe(hi)});
      }
      if (lo.n_active() != hi.n_active() || lo.m_exited() != hi.m_exited()) {
        report.violations.push_back({m, pair, "N/M differ: " + describe(lo) + " vs " +
                                                  describe(hi)});
      } else if (!interface_leq(from_ordered(lo), from_ordered(hi))) {
        report.violations.push_back({m, pair, "physical restriction out of order: " +
                                                  describe(lo) + " vs " + describe(hi)});
      }
    }
  }
  report.passed = report.violations.empty();
  return report;
}

}  // namespace curres
