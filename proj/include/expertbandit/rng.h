// Copyright 2026 The ExpertBandit Authors.
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

#ifndef EXPERTBANDIT_RNG_H_
#define EXPERTBANDIT_RNG_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>

namespace expertbandit {

// Counter-based generator (Philox4x32-10). A stream is identified by a key
// derived from (seed, purpose) plus a 64-bit stream index; every distinct
// triple yields an independent sequence, so runs can be split across threads
// without sharing state.
//
// All distributions below are implemented here rather than through <random>
// so that sequences are identical across standard library implementations.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::string_view purpose = {},
               std::uint64_t stream = 0);

  // Child stream; does not advance this generator.
  Rng fork(std::string_view purpose, std::uint64_t stream = 0) const;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1].
  double uniform_pos();
  // Uniform integer in [0, n). n must be positive.
  std::size_t below(std::size_t n);
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }
  // Gamma(shape, 1), Marsaglia-Tsang.
  double gamma(double shape);
  // Index drawn with probability proportional to probs (need not be
  // normalized, must have positive total mass).
  std::size_t categorical(std::span<const double> probs);

  std::uint64_t key() const {
    return (std::uint64_t{key_[1]} << 32) | key_[0];
  }

 private:
  Rng(std::array<std::uint32_t, 2> key, std::uint64_t stream);
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> buffer_{};
  int position_ = 4;
};

// The raw block function.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

// Inverse-CDF lookup: smallest index whose cumulative mass exceeds u (u in
// [0,1)). Falls back to the last index with positive mass when rounding leaves
// the cumulative sum short of u.
std::size_t inverse_cdf(std::span<const double> probs, double u);

// 64-bit mixing of a string; stable across platforms.
std::uint64_t hash_string(std::string_view text);
std::uint64_t mix64(std::uint64_t x);

}  // namespace expertbandit

#endif  // EXPERTBANDIT_RNG_H_
