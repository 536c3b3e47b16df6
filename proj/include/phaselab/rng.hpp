// Copyright 2026 The Phaselab Authors
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
#include <cstdint>
#include <string_view>

#include "phaselab/core.hpp"

namespace phaselab {

/// One Philox4x64-10 block: 4 output words from a 256-bit counter and a
/// 128-bit key. Matches the reference generator used by NumPy bit for bit.
std::array<std::uint64_t, 4> philox4x64_10(
    const std::array<std::uint64_t, 4>& counter,
    const std::array<std::uint64_t, 2>& key);

/// splitmix64 finalizer; bijective 64-bit mix used for substream derivation.
std::uint64_t splitmix64_mix(std::uint64_t x);

/// Counter-based random stream. A stream is fully determined by
/// (seed, stream_id); draws advance a local counter only, so distinct
/// streams may be consumed in any order or in parallel without
/// interacting. Reproducible across platforms by construction.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  static constexpr std::string_view algorithm = "philox4x64-10";

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Derived child stream k. Children of distinct (stream, k) pairs are
  /// distinct in all project usage; the derivation is pinned so results
  /// are stable across releases.
  RandomStream substream(std::uint64_t k) const;

  std::uint64_t next_u64();

  /// Uniform on (0, 1]: (x >> 11) * 2^-53 with the zero mapped to 1.
  double next_double();

  /// Uniform on [0, n). Rejection sampling, bias-free.
  std::uint64_t next_index(std::uint64_t n);

  /// Standard normal via Box-Muller (pinned; std::normal_distribution is
  /// implementation-defined and would break reproducibility).
  double next_gaussian();

  /// (a + ib)/sqrt(2) with a, b standard normal; E|z|^2 = 1.
  Complex next_complex_gaussian();

  /// Matrix of independent standard complex Gaussians, column-major fill.
  Matrix gaussian_matrix(Index rows, Index cols);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::array<std::uint64_t, 2> key_;
  std::uint64_t block_index_ = 0;
  std::array<std::uint64_t, 4> block_{};
  int block_pos_ = 4;  // forces a refill on first draw
  double spare_gaussian_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace phaselab
