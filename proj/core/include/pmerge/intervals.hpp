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

#include <cstdint>
#include <string>
#include <vector>

#include "pmerge/column_model.hpp"
#include "pmerge/constructions.hpp"
#include "pmerge/half.hpp"

namespace pmerge {

/// Symbolic range of a reduced value: a level w in {0, ..., k-1}, or -k, or
/// +-k. With H_i = 2^i - 1 the ranges are
///   I(0)   = [-1/2, 0]
///   I(i)   = [-1/2, H_i / 2]               1 <= i <= k-1
///   I(-k)  = [-H_{k-1} / 2, 0]
///   I(+-k) = [-H_{k-1} / 2, H_{k-1} / 2]
struct IntervalDescriptor {
  enum class Kind { level, minus_k, plus_minus_k };
  Kind kind = Kind::level;
  int level = 0;

  static IntervalDescriptor at_level(int w) { return {Kind::level, w}; }
  static IntervalDescriptor minus_k() { return {Kind::minus_k, 0}; }
  static IntervalDescriptor plus_minus_k() { return {Kind::plus_minus_k, 0}; }

  friend bool operator==(const IntervalDescriptor&, const IntervalDescriptor&) = default;
};

std::string to_string(const IntervalDescriptor& w, int k);

struct ClosedInterval {
  Half lo;
  Half hi;
  bool contains(Half x) const { return lo <= x && x <= hi; }
  bool contains(const ClosedInterval& o) const { return lo <= o.lo && o.hi <= hi; }
};

/// PreconditionError for a level outside 0..k-1.
ClosedInterval interval_of(const IntervalDescriptor& w, int k);

/// All multiples of 1/2 in the interval, in increasing order.
std::vector<Half> half_grid(const ClosedInterval& iv);

using DescriptorSequence = std::vector<IntervalDescriptor>;

std::string to_string(const DescriptorSequence& seq, int k);

/// True iff every d_l lies in I(seq_l).
bool contained(const ReducedState& d, const DescriptorSequence& seq, int k);

/// The descriptor sequences U_x, V_x, W_x, Z (length b/2) and the per-step
/// sequences X_i that bound a reduced balanced run after i steps.
class StateSequences {
 public:
  explicit StateSequences(const NetworkParams& prm);

  /// max(0, k - (p-2)(l-1) - ((x + l - 1) mod p)), 0 <= x <= p, 1 <= l <= b/2.
  int e(int x, int l) const;

  DescriptorSequence u(int x) const;
  DescriptorSequence v(int x) const;
  DescriptorSequence w(int x) const;
  DescriptorSequence z() const;

  /// First `count` entries of a, the rest from b.
  DescriptorSequence join(std::int64_t count, const DescriptorSequence& a,
                          const DescriptorSequence& b) const;

  /// X_i for 1 <= i <= last_index().
  DescriptorSequence x(std::int64_t i) const;

  /// p(b-1) - (b/2 - 1).
  std::int64_t last_index() const { return params_.balanced_merge_stages(); }

 private:
  bool moving_left(int x, int l) const;

  NetworkParams params_;
};

}  // namespace pmerge
