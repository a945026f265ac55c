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
#include <string>
#include <utility>
#include <vector>

#include "pmerge/constructions.hpp"
#include "pmerge/network.hpp"

namespace pmerge {

// Verification campaigns. Each claim about the networks is turned into a
// deterministic pass/fail run over an explicitly counted input space.

enum class Coverage {
  exhaustive,  ///< every input of the stated space was checked
  sampled,     ///< seeded random sample only
  mixed,       ///< some sub-checks exhaustive, others sampled
  truncated,   ///< the time budget ran out before the space was covered
};

std::string to_string(Coverage c);

struct Counterexample {
  std::string what;
  std::string payload;
};

struct VerificationReport {
  std::string claim;
  int p = 0;
  int k = 0;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t samples = 0;
  Coverage coverage = Coverage::exhaustive;
  std::uint64_t cases_checked = 0;
  /// Named sub-counts, in a fixed order.
  std::vector<std::pair<std::string, std::uint64_t>> tallies;
  std::uint64_t failure_count = 0;
  /// The first few failures, in input order.
  std::vector<Counterexample> failures;
  double elapsed_seconds = 0.0;

  bool passed() const { return failure_count == 0 && coverage != Coverage::truncated; }
};

/// Timing is left out unless asked for so that reports of identical runs
/// compare byte for byte.
std::string report_to_json(const VerificationReport& r, bool include_timing = false);
std::string report_to_text(const VerificationReport& r);

struct CampaignOptions {
  /// Random column states for the equivalence check, and the cap on integer
  /// spot checks of the merger (at most 100).
  std::uint64_t trials = 10'000;
  /// Random inputs for the sampled cw sorting and column-theorem checks.
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 1;
  /// Per-claim wall-clock budget; <= 0 disables it.
  double budget_seconds = 60.0;
  /// Enumerations up to this size are run exhaustively.
  std::uint64_t exhaustive_limit = 1'000'000;
  std::size_t max_counterexamples = 5;
};

/// Sorted union of two sorted sequences. PreconditionError if either input
/// is unsorted.
std::vector<std::int64_t> oracle_merge(std::span<const std::int64_t> a,
                                       std::span<const std::int64_t> b);

/// The (N/2 + 1)^2 0-1 sequences of length N whose even-indexed and
/// odd-indexed subsequences (0-based) are each of the form 0*1*.
class TwoSortedInputs {
 public:
  /// PreconditionError for odd N.
  explicit TwoSortedInputs(std::size_t registers);

  std::uint64_t size() const { return (half_ + 1) * (half_ + 1); }
  std::size_t registers() const { return 2 * half_; }

  /// Ones in the even-indexed and odd-indexed subsequences of input `index`.
  std::pair<std::size_t, std::size_t> ones(std::uint64_t index) const;
  std::vector<std::uint8_t> at(std::uint64_t index) const;

 private:
  std::uint64_t half_;
};

std::vector<std::vector<std::uint8_t>> enumerate_two_sorted_01(std::size_t registers);

/// Exhaustive 0-1 certificate that b-1 passes of M merge, plus `trials`
/// random integer inputs compared against oracle_merge.
VerificationReport verify_merger(int p, int k, const CampaignOptions& opt = {});

/// One-pass merging (exhaustive) and k-pass sorting of the CW_k network:
/// exhaustive over all 0-1 inputs for 2^k <= 16 registers, otherwise
/// `samples` random permutations.
VerificationReport verify_cw(int k, const CampaignOptions& opt = {});

/// Register simulation vs. the column maps, stage by stage for b-1 passes,
/// on `trials` random sorted-column states (plus every state when
/// (n+1)^b <= exhaustive_limit / 10).
VerificationReport verify_column_equivalence(int p, int k, const CampaignOptions& opt = {});

/// Interval inclusions for Dec, Cyc, Min and MinMax, checked on every
/// multiple of 1/2 in the source intervals.
VerificationReport verify_interval_inclusions(int k);

/// Trace containment, balanced terminal state, bound sandwich and general
/// flatness over the canonical 2-flat enumeration, or `samples` random
/// 2-flat states plus `samples` random balanced ones when the enumeration
/// exceeds exhaustive_limit. Includes verify_interval_inclusions(k).
VerificationReport verify_column_theorems(int p, int k, const CampaignOptions& opt = {});

/// Delay, column membership of every stage of the unpacked network, the
/// neighbour comparators of M, and the running-time bounds.
VerificationReport verify_structure(int p, int k);

/// The merger, cw, columns, theorems and structure claims for (p, k).
std::vector<VerificationReport> verify_all(int p, int k, const CampaignOptions& opt = {});

}  // namespace pmerge
