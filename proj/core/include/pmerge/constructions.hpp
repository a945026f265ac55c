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

#include "pmerge/network.hpp"

namespace pmerge {

/// Derived sizes of the p-periodic merger for one (p, k) pair.
///
///   column_height  n = 2^(k-1) - 1      rows of the register matrix
///   columns        b = 2 ceil((k-2)/(p-2))
///   registers      N = n * b
///   depth          D = k - 1 + b/2      stages of the unpacked network
///   offset(s)      h = 2^(k-s-1) - 1    row offset of a long comparator
struct NetworkParams {
  int p = 0;
  int k = 0;
  std::int64_t column_height = 0;
  std::int64_t columns = 0;
  std::int64_t registers = 0;
  std::int64_t depth = 0;

  std::int64_t half_columns() const { return columns / 2; }

  /// Row offset h_s, 1 <= s <= k-1.
  std::int64_t offset(int s) const;

  /// floor((k-2)/(p-2)): number of shift stages, i.e. mov functions.
  std::int64_t shift_count() const;

  /// b - 1: passes needed to merge.
  std::int64_t merge_passes() const { return columns - 1; }

  /// p(b-1): merging time in stages.
  std::int64_t merge_stages() const { return p * (columns - 1); }

  /// p(b-1) - (b/2 - 1): steps after which a balanced column state is flat.
  std::int64_t balanced_merge_stages() const { return merge_stages() - (half_columns() - 1); }

  friend bool operator==(const NetworkParams&, const NetworkParams&) = default;
};

inline constexpr int kMaxExponent = 24;

/// Throws ParameterError unless p <= k <= kMaxExponent and p >= 4 (p >= 3
/// with allow_p3).
NetworkParams params(int p, int k, bool allow_p3 = false);

/// The (log N)-periodic sorter on 2^k registers, k stages.
Network build_cw(int k);

/// Unpacked merger on N + 2 registers (0 .. N+1) with D stages and delay p.
Network build_p(const NetworkParams& prm);

/// Compact form of build_p with registers 0 and N+1 deleted: p stages on N
/// registers. Register r here is register r + 1 of build_p.
Network build_m(const NetworkParams& prm);

}  // namespace pmerge
