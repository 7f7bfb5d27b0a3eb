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

#include <array>
#include <cmath>
#include <cstdint>

namespace curres {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter apply(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
      }
      const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }
};

/// SplitMix64 finalizer; used to derive independent keys from one seed.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Seed of replica r drawn from a base seed.
constexpr std::uint64_t replica_seed(std::uint64_t base, std::uint64_t replica) noexcept {
  return mix64(base ^ mix64(replica + 0x632BE59BD9B4E019ull));
}

/// Uniform on (0,1] with 53 random bits.
inline double unit_open_closed(std::uint32_t hi, std::uint32_t lo) noexcept {
  const std::uint64_t bits = ((std::uint64_t{hi} << 32) | lo) >> 11;
  return static_cast<double>(bits + 1) * 0x1.0p-53;
}

/// One event of a clock: the waiting time since the previous event and a
/// fair +-1 mark.
struct ClockDraw {
  double gap;
  int mark;
};

/// Position in one label's event stream.
struct ClockCursor {
  std::uint32_t label = 0;
  std::uint64_t index = 0;  // number of events already consumed
  double time = 0.0;        // time of the pending event
  int mark = 0;             // mark of the pending event
};

/// The realization omega of all Poisson clocks. Label 0 rings at rate
/// 2*j*eps (a + mark is a birth, a - mark a death); every other label rings
/// at rate 1 (a +-1 displacement). Draw k of label i depends only on
/// (seed, i, k), so streams can be consumed in any order or replayed.
class ClockBundle {
 public:
  ClockBundle(std::uint64_t seed, double j, double eps)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        seed_(seed),
        reservoir_rate_(2.0 * j * eps) {}

  std::uint64_t seed() const noexcept { return seed_; }
  double reservoir_rate() const noexcept { return reservoir_rate_; }
  double rate(std::uint32_t label) const noexcept { return label == 0 ? reservoir_rate_ : 1.0; }

  ClockDraw draw(std::uint32_t label, std::uint64_t k) const noexcept {
    const auto out = Philox4x32::apply(
        {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32), label, 0x5eedu}, key_);
    const int mark = (out[2] & 1u) ? 1 : -1;
    const double r = rate(label);
    if (!(r > 0.0)) return {HUGE_VAL, mark};
    return {-std::log(unit_open_closed(out[0], out[1])) / r, mark};
  }

  /// Cursor at the first event of `label` after `origin`. A label started at
  /// origin s uses the same draws as one started at 0, shifted to begin at s.
  ClockCursor start(std::uint32_t label, double origin) const noexcept {
    ClockCursor c{label, 0, origin, 0};
    advance(c);
    return c;
  }

  void advance(ClockCursor& c) const noexcept {
    const ClockDraw d = draw(c.label, c.index++);
    c.time += d.gap;
    c.mark = d.mark;
  }

 private:
  Philox4x32::Key key_;
  std::uint64_t seed_;
  double reservoir_rate_;
};

}  // namespace curres
