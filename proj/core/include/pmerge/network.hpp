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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pmerge/error.hpp"

namespace pmerge {

/// A standard comparator [lo:hi]: after it fires, register `lo` holds the
/// minimum and register `hi` the maximum of the two values. Indices are
/// 0-based.
struct Comparator {
  std::size_t lo = 0;
  std::size_t hi = 0;

  friend auto operator<=>(const Comparator&, const Comparator&) = default;
};

std::string to_string(const Comparator& c);

/// A set of comparators on pairwise disjoint registers, kept sorted by `lo`.
class Stage {
 public:
  Stage() = default;

  /// Throws StructureError if a comparator is not standard (lo >= hi) or if
  /// two comparators share a register.
  explicit Stage(std::vector<Comparator> comparators);

  std::span<const Comparator> comparators() const { return comparators_; }
  std::size_t size() const { return comparators_.size(); }
  bool empty() const { return comparators_.empty(); }

  /// One past the largest register index used; 0 for an empty stage.
  std::size_t extent() const { return extent_; }

  bool touches(std::size_t reg) const;

  friend bool operator==(const Stage& a, const Stage& b) {
    return a.comparators_ == b.comparators_;
  }

 private:
  std::vector<Comparator> comparators_;
  std::size_t extent_ = 0;
};

/// N registers and an ordered sequence of stages. Immutable once built.
class Network {
 public:
  Network() = default;

  /// Throws StructureError if any comparator index is >= register_count.
  Network(std::size_t register_count, std::vector<Stage> stages);

  std::size_t register_count() const { return register_count_; }
  std::size_t depth() const { return stages_.size(); }
  std::span<const Stage> stages() const { return stages_; }
  const Stage& stage(std::size_t index) const { return stages_.at(index); }
  std::size_t comparator_count() const;

  friend bool operator==(const Network&, const Network&) = default;

 private:
  std::size_t register_count_ = 0;
  std::vector<Stage> stages_;
};

namespace detail {
void throw_length_mismatch(std::size_t needed, std::size_t got);
}  // namespace detail

/// Applies every comparator of `stage` to `values` in place. Returns true iff
/// some comparator found its inputs out of order and swapped them.
template <class T>
bool apply_stage_in_place(const Stage& stage, std::span<T> values) {
  if (stage.extent() > values.size()) {
    detail::throw_length_mismatch(stage.extent(), values.size());
  }
  bool exchanged = false;
  for (const Comparator& c : stage.comparators()) {
    T& a = values[c.lo];
    T& b = values[c.hi];
    if (b < a) {
      std::swap(a, b);
      exchanged = true;
    }
  }
  return exchanged;
}

template <class T>
struct Applied {
  std::vector<T> values;
  bool exchanged = false;
};

template <class T>
Applied<T> apply_stage(const Stage& stage, std::vector<T> values) {
  const bool exchanged = apply_stage_in_place(stage, std::span<T>(values));
  return {std::move(values), exchanged};
}

/// Runs all stages of `net` once, in order, in place.
template <class T>
bool apply_network_in_place(const Network& net, std::span<T> values) {
  if (values.size() != net.register_count()) {
    detail::throw_length_mismatch(net.register_count(), values.size());
  }
  bool exchanged = false;
  for (const Stage& stage : net.stages()) {
    exchanged |= apply_stage_in_place(stage, values);
  }
  return exchanged;
}

template <class T>
Applied<T> apply_network(const Network& net, std::vector<T> values) {
  const bool exchanged = apply_network_in_place(net, std::span<T>(values));
  return {std::move(values), exchanged};
}

/// max over touched registers of lst - fst + 1 (1-based stage positions);
/// 0 for a network without comparators.
std::size_t delay(const Network& net);

/// Packs a network of delay D into D stages by unioning stages D apart.
/// Throws PreconditionError when the network has no comparators and
/// ConstructionError if a merged stage would reuse a register.
Network compact_form(const Network& net);

/// Removes every comparator touching a dropped register and renumbers the
/// surviving registers contiguously, preserving order.
Network restrict_registers(const Network& net, std::span<const std::size_t> dropped);

}  // namespace pmerge
