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

#include "pmerge/network.hpp"
#include "pmerge/packed.hpp"

#include <algorithm>
#include <sstream>

namespace pmerge {

std::string to_string(const Comparator& c) {
  std::ostringstream os;
  os << '[' << c.lo << ':' << c.hi << ']';
  return os.str();
}

Stage::Stage(std::vector<Comparator> comparators) : comparators_(std::move(comparators)) {
  std::sort(comparators_.begin(), comparators_.end());
  std::vector<std::size_t> regs;
  regs.reserve(2 * comparators_.size());
  for (const Comparator& c : comparators_) {
    if (c.lo >= c.hi) {
      throw StructureError("non-standard comparator " + to_string(c));
    }
    regs.push_back(c.lo);
    regs.push_back(c.hi);
    extent_ = std::max(extent_, c.hi + 1);
  }
  std::sort(regs.begin(), regs.end());
  const auto dup = std::adjacent_find(regs.begin(), regs.end());
  if (dup != regs.end()) {
    throw StructureError("register " + std::to_string(*dup) +
                         " is used by two comparators of one stage");
  }
}

bool Stage::touches(std::size_t reg) const {
  return std::any_of(comparators_.begin(), comparators_.end(),
                     [reg](const Comparator& c) { return c.lo == reg || c.hi == reg; });
}

Network::Network(std::size_t register_count, std::vector<Stage> stages)
    : register_count_(register_count), stages_(std::move(stages)) {
  for (std::size_t i = 0; i < stages_.size(); ++i) {
    if (stages_[i].extent() > register_count_) {
      throw StructureError("stage " + std::to_string(i + 1) + " uses register " +
                           std::to_string(stages_[i].extent() - 1) + " of a " +
                           std::to_string(register_count_) + "-register network");
    }
  }
}

std::size_t Network::comparator_count() const {
  std::size_t total = 0;
  for (const Stage& s : stages_) total += s.size();
  return total;
}

namespace detail {
void throw_length_mismatch(std::size_t needed, std::size_t got) {
  throw StructureError("value sequence of length " + std::to_string(got) +
                       " does not cover " + std::to_string(needed) + " registers");
}
}  // namespace detail

std::size_t delay(const Network& net) {
  constexpr std::size_t kUnset = 0;
  std::vector<std::size_t> first(net.register_count(), kUnset);
  std::vector<std::size_t> last(net.register_count(), kUnset);
  for (std::size_t i = 0; i < net.depth(); ++i) {
    const std::size_t pos = i + 1;
    for (const Comparator& c : net.stage(i).comparators()) {
      for (std::size_t r : {c.lo, c.hi}) {
        if (first[r] == kUnset) first[r] = pos;
        last[r] = pos;
      }
    }
  }
  std::size_t result = 0;
  for (std::size_t r = 0; r < net.register_count(); ++r) {
    if (first[r] != kUnset) result = std::max(result, last[r] - first[r] + 1);
  }
  return result;
}

Network compact_form(const Network& net) {
  const std::size_t d = delay(net);
  if (d == 0) {
    throw PreconditionError("compact form needs a network with at least one comparator");
  }
  std::vector<Stage> packed;
  packed.reserve(d);
  for (std::size_t q = 0; q < d; ++q) {
    std::vector<Comparator> merged;
    std::vector<bool> used(net.register_count(), false);
    for (std::size_t i = q; i < net.depth(); i += d) {
      for (const Comparator& c : net.stage(i).comparators()) {
        if (used[c.lo] || used[c.hi]) {
          throw ConstructionError("compact form: stage " + std::to_string(i + 1) +
                                  " collides on " + to_string(c) + " in packed stage " +
                                  std::to_string(q + 1));
        }
        used[c.lo] = used[c.hi] = true;
        merged.push_back(c);
      }
    }
    packed.emplace_back(std::move(merged));
  }
  return Network(net.register_count(), std::move(packed));
}

Network restrict_registers(const Network& net, std::span<const std::size_t> dropped) {
  constexpr std::size_t kDropped = static_cast<std::size_t>(-1);
  std::vector<std::size_t> renumber(net.register_count());
  for (std::size_t r : dropped) {
    if (r >= net.register_count()) {
      throw StructureError("cannot drop register " + std::to_string(r) + " of a " +
                           std::to_string(net.register_count()) + "-register network");
    }
    renumber[r] = kDropped;
  }
  std::size_t next = 0;
  for (std::size_t r = 0; r < net.register_count(); ++r) {
    if (renumber[r] != kDropped) renumber[r] = next++;
  }
  std::vector<Stage> stages;
  stages.reserve(net.depth());
  for (const Stage& s : net.stages()) {
    std::vector<Comparator> kept;
    for (const Comparator& c : s.comparators()) {
      if (renumber[c.lo] == kDropped || renumber[c.hi] == kDropped) continue;
      kept.push_back({renumber[c.lo], renumber[c.hi]});
    }
    stages.emplace_back(std::move(kept));
  }
  return Network(next, std::move(stages));
}

std::vector<LaneWord> pack_lanes(std::span<const std::vector<std::uint8_t>> inputs,
                                 std::size_t registers) {
  if (inputs.size() > kLanes) {
    throw PreconditionError("at most 64 inputs fit into one lane word");
  }
  std::vector<LaneWord> words(registers, 0);
  for (std::size_t lane = 0; lane < inputs.size(); ++lane) {
    if (inputs[lane].size() != registers) {
      detail::throw_length_mismatch(registers, inputs[lane].size());
    }
    for (std::size_t r = 0; r < registers; ++r) {
      if (inputs[lane][r] != 0) words[r] |= LaneWord{1} << lane;
    }
  }
  return words;
}

std::vector<std::uint8_t> unpack_lane(std::span<const LaneWord> words, std::size_t lane) {
  std::vector<std::uint8_t> out(words.size());
  for (std::size_t r = 0; r < words.size(); ++r) out[r] = (words[r] >> lane) & 1U;
  return out;
}

}  // namespace pmerge
