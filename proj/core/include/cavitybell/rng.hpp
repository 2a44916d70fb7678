// Copyright 2026 The cavitybell Authors
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
#include <string_view>

namespace cavitybell {

/// SplitMix64 finalizer (Steele, Lea and Flood 2014).
std::uint64_t splitmix64_mix(std::uint64_t z);

/// 64-bit FNV-1a hash, used to turn a stage name into a stream tag.
std::uint64_t stage_tag(std::string_view name);

/**
 * A SplitMix64 stream. Independent streams for parallel Monte-Carlo runs are
 * keyed by (master seed, run index, stage tag); the starting state is
 *   mix(mix(master ^ mix(tag)) + run_index)
 * so outputs depend only on those three numbers and never on scheduling.
 */
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);
  RandomStream(std::uint64_t master_seed, std::uint64_t run_index, std::uint64_t tag);

  std::uint64_t next_u64();
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// True with probability p (p clamped to [0, 1]).
  bool bernoulli(double p);

 private:
  std::uint64_t state_;
};

}  // namespace cavitybell
