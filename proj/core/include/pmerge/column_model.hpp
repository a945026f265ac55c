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
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pmerge/constructions.hpp"
#include "pmerge/half.hpp"

namespace pmerge {

// Column abstraction of the merger. The N registers form an n x b matrix
// whose column t (1-based) holds registers t-1, t-1+b, t-1+2b, ... of M.
// While every column is sorted, a 0-1 register state is fully described by
// the number of ones per column, and each stage of M acts on those counts
// through a handful of min/max maps. Positions below are 1-based where the
// text says "position", matching the usual c_1 .. c_b notation.

struct ColumnState {
  std::vector<std::int64_t> counts;

  std::size_t size() const { return counts.size(); }
  /// 1-based access.
  std::int64_t at(std::size_t t) const { return counts.at(t - 1); }
  std::int64_t& at(std::size_t t) { return counts.at(t - 1); }

  friend bool operator==(const ColumnState&, const ColumnState&) = default;
};

std::string to_string(const ColumnState& c);

/// Checks length b and 0 <= c_t <= n. Throws PreconditionError otherwise.
ColumnState make_column_state(const NetworkParams& prm, std::vector<std::int64_t> counts);

// Component maps. They are plain min/max expressions and accept any integer
// sequence of the right length, which the translation-equivariance checks use.

/// c_1 <- max(c_1, c_b - 1), c_b <- min(c_1 + 1, c_b).
ColumnState cyc(const ColumnState& c);

/// c_j <- min(c_j, c_{b-j+1} + h_s), c_{b-j+1} <- max(c_j - h_s, c_{b-j+1}).
/// Requires 1 <= j <= b/2 and 1 <= s <= k-1.
ColumnState dec(const NetworkParams& prm, const ColumnState& c, int j, int s);

/// Compare-exchange of positions (j, j+1) and (b-j, b-j+1); for j = b/2 the
/// two pairs coincide. Requires 1 <= j <= b/2.
ColumnState mov(const NetworkParams& prm, const ColumnState& c, int j);

bool is_flat(std::span<const std::int64_t> c);
bool is_2flat(std::span<const std::int64_t> c);
bool is_balanced(std::span<const std::int64_t> c);
/// c_1 + c_b of a balanced sequence; PreconditionError when unbalanced.
std::int64_t height(std::span<const std::int64_t> c);

inline bool is_flat(const ColumnState& c) { return is_flat(std::span(c.counts)); }
inline bool is_2flat(const ColumnState& c) { return is_2flat(std::span(c.counts)); }
inline bool is_balanced(const ColumnState& c) { return is_balanced(std::span(c.counts)); }
inline std::int64_t height(const ColumnState& c) { return height(std::span(c.counts)); }

/// Left half of a balanced state, recentred by half the height.
struct ReducedState {
  std::vector<Half> values;
  std::int64_t height = 0;

  friend bool operator==(const ReducedState&, const ReducedState&) = default;
};

std::string to_string(const ReducedState& d);

/// PreconditionError unless `c` is balanced.
ReducedState reduce(const ColumnState& c);

/// Rebuilds the balanced state of the given height. PreconditionError if a
/// value does not have the parity of the height.
ColumnState ext(const ReducedState& d);

// Reduced component maps.
Half reduced_cyc(Half x);                 ///< max(x, -x-1)
Half reduced_min(Half x);                 ///< min(x, -x)
Half reduced_dec(int i, Half x);          ///< min(x, -x + 2^i - 1), i >= 0
std::pair<Half, Half> reduced_minmax(Half x, Half y);

/// One member of a stage function set Q_x.
struct ComponentFunction {
  enum class Kind { cyc, dec, mov };
  Kind kind = Kind::cyc;
  int j = 0;  ///< column pair index (dec, mov)
  int s = 0;  ///< long-stage index (dec)

  /// 1-based positions the function can modify.
  std::vector<std::size_t> args(std::int64_t columns) const;

  friend bool operator==(const ComponentFunction&, const ComponentFunction&) = default;
};

std::string to_string(const ComponentFunction& f);

/// The p stage maps Q_1 .. Q_p acting on column counts, and their reduced
/// forms acting on reduced states.
class ColumnDynamics {
 public:
  /// Selects the members of every Q_x and throws ConstructionError if two
  /// members of one set share a position.
  explicit ColumnDynamics(const NetworkParams& prm);

  const NetworkParams& params() const { return params_; }

  /// Members of Q_x, 1 <= x <= p.
  const std::vector<ComponentFunction>& stage_functions(int x) const;

  ColumnState apply(const ComponentFunction& f, const ColumnState& c) const;

  ColumnState q_stage(int x, const ColumnState& c) const;
  ReducedState reduced_q_stage(int x, const ReducedState& d) const;

  /// Stage map used at step i >= 1 of a periodic run: ((i-1) mod p) + 1.
  int stage_of_step(std::int64_t step) const;

  /// Applies steps 1..steps.
  ColumnState run(ColumnState c, std::int64_t steps) const;

 private:
  NetworkParams params_;
  std::vector<std::vector<ComponentFunction>> stages_;
};

/// 0-1 register contents of M whose column t holds c_t ones at its bottom.
std::vector<std::uint8_t> matrix_from_counts(const NetworkParams& prm, const ColumnState& c);

/// Ones per column, or nullopt if some column is not of the form 0*1*.
std::optional<ColumnState> column_counts(const NetworkParams& prm,
                                         std::span<const std::uint8_t> registers);

/// Lower and upper balanced bounds of a 2-flat, unbalanced state.
struct StateBounds {
  ColumnState lower;
  ColumnState upper;
};

/// PreconditionError if `c` is not 2-flat or is balanced.
StateBounds bounds(const ColumnState& c);

/// All 2-flat states with entries in [0, n], in a canonical order. A flat
/// track of length b/2 is (base v, m) = v repeated m times then v+1; the
/// state is the pair (odd track, even track).
class TwoFlatEnumeration {
 public:
  explicit TwoFlatEnumeration(const NetworkParams& prm);

  std::uint64_t size() const { return track_count_ * track_count_; }
  ColumnState at(std::uint64_t index) const;

  ColumnState random(std::mt19937_64& rng) const;
  /// Uniform over odd tracks, then uniform over the heights the odd track
  /// admits; always balanced and 2-flat.
  ColumnState random_balanced(std::mt19937_64& rng) const;

 private:
  std::vector<std::int64_t> track(std::uint64_t t) const;

  NetworkParams params_;
  std::uint64_t track_count_ = 0;
};

}  // namespace pmerge
