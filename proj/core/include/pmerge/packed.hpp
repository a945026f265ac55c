// Copyright 2026 The pmerge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pmerge/network.hpp"

namespace pmerge {

// Bit-sliced 0-1 simulation: word r holds register r of 64 independent
// inputs, one per bit lane. A comparator on 0-1 values is (a & b, a | b).

using LaneWord = std::uint64_t;
inline constexpr std::size_t kLanes = 64;

/// Returns the mask of lanes in which some comparator exchanged a 1 with a 0.
inline LaneWord apply_stage_packed(const Stage& stage, std::span<LaneWord> words) {
  if (stage.extent() > words.size()) {
    detail::throw_length_mismatch(stage.extent(), words.size());
  }
  LaneWord exchanged = 0;
  for (const Comparator& c : stage.comparators()) {
    const LaneWord a = words[c.lo];
    const LaneWord b = words[c.hi];
    exchanged |= a & ~b;
    words[c.lo] = a & b;
    words[c.hi] = a | b;
  }
  return exchanged;
}

inline LaneWord apply_network_packed(const Network& net, std::span<LaneWord> words) {
  if (words.size() != net.register_count()) {
    detail::throw_length_mismatch(net.register_count(), words.size());
  }
  LaneWord exchanged = 0;
  for (const Stage& stage : net.stages()) exchanged |= apply_stage_packed(stage, words);
  return exchanged;
}

/// Mask of lanes whose register contents are not of the form 0*1*.
inline LaneWord unsorted_lanes(std::span<const LaneWord> words) {
  LaneWord bad = 0;
  for (std::size_t r = 0; r + 1 < words.size(); ++r) bad |= words[r] & ~words[r + 1];
  return bad;
}

/// Transposes up to 64 scalar 0-1 inputs into lane words.
std::vector<LaneWord> pack_lanes(std::span<const std::vector<std::uint8_t>> inputs,
                                 std::size_t registers);

/// Extracts one lane as a scalar 0-1 sequence.
std::vector<std::uint8_t> unpack_lane(std::span<const LaneWord> words, std::size_t lane);

}  // namespace pmerge
