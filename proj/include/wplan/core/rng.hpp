// Copyright 2026 The wplan Authors
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

namespace wplan {

/// Counter-based random stream built on Philox4x32-10.
///
/// A stream is a (key, counter) pair. Every draw encrypts the next counter
/// value under the key, so the output depends only on the seed and on how
/// many values were consumed. `split(k)` derives a child key from the parent
/// key and `k` without touching the parent counter, so the parent sequence
/// is the same whether or not children were split off.
///
/// Normal variates use Box-Muller on the stream's own uniforms and never
/// go through std::*_distribution, whose output is implementation-defined.
///
/// A stream is single-owner; copy it to fork an identical sequence.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1); never returns 0 or 1.
  double uniform_open();
  double uniform(double low, double high);
  // Uniform integer in [0, n). Rejection sampling, no modulo bias.
  std::uint64_t uniform_int(std::uint64_t n);
  double normal();

  RandomStream split(std::uint64_t index) const;

  std::array<std::uint32_t, 2> key() const { return key_; }

 private:
  explicit RandomStream(std::array<std::uint32_t, 2> key);

  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int block_pos_ = 4;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

inline RandomStream make_rng(std::uint64_t seed) { return RandomStream(seed); }

// One Philox4x32-10 block. Exposed for the known-answer test.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

}  // namespace wplan
