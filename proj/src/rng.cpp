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

#include "phaselab/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace phaselab {

namespace {

constexpr std::uint64_t kPhiloxM0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kPhiloxM1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kPhiloxW0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kPhiloxW1 = 0xBB67AE8584CAA73BULL;
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t mulhilo(std::uint64_t a, std::uint64_t b,
                             std::uint64_t* hi) {
  const unsigned __int128 p =
      static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
  *hi = static_cast<std::uint64_t>(p >> 64);
  return static_cast<std::uint64_t>(p);
}

}  // namespace

std::array<std::uint64_t, 4> philox4x64_10(
    const std::array<std::uint64_t, 4>& counter,
    const std::array<std::uint64_t, 2>& key) {
  std::array<std::uint64_t, 4> c = counter;
  std::array<std::uint64_t, 2> k = key;
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0, hi1;
    const std::uint64_t lo0 = mulhilo(kPhiloxM0, c[0], &hi0);
    const std::uint64_t lo1 = mulhilo(kPhiloxM1, c[2], &hi1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kPhiloxW0;
    k[1] += kPhiloxW1;
  }
  return c;
}

std::uint64_t splitmix64_mix(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  // The key carries only the seed; streams are separated through counter
  // word 1, which makes distinct (stream_id, block) pairs distinct blocks
  // by construction rather than by hashing.
  key_ = {splitmix64_mix(seed), splitmix64_mix(seed ^ kGolden)};
}

RandomStream RandomStream::substream(std::uint64_t k) const {
  return RandomStream(seed_, splitmix64_mix(stream_id_ + kGolden * (k + 1)));
}

std::uint64_t RandomStream::next_u64() {
  if (block_pos_ == 4) {
    ++block_index_;  // first emitted block uses counter word 0 == 1
    block_ = philox4x64_10({block_index_, stream_id_, 0, 0}, key_);
    block_pos_ = 0;
  }
  return block_[block_pos_++];
}

double RandomStream::next_double() {
  const double u =
      static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  return u == 0.0 ? 1.0 : u;
}

std::uint64_t RandomStream::next_index(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("phaselab: next_index(0)");
  const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  std::uint64_t x = next_u64();
  while (x < threshold) x = next_u64();
  return x % n;
}

double RandomStream::next_gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_gaussian_;
  }
  const double u1 = next_double();
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * kPi * u2;
  spare_gaussian_ = r * std::sin(t);
  have_spare_ = true;
  return r * std::cos(t);
}

Complex RandomStream::next_complex_gaussian() {
  const double re = next_gaussian();
  const double im = next_gaussian();
  return Complex(re, im) / std::sqrt(2.0);
}

Matrix RandomStream::gaussian_matrix(Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index c = 0; c < cols; ++c)
    for (Index r = 0; r < rows; ++r) m(r, c) = next_complex_gaussian();
  return m;
}

}  // namespace phaselab
