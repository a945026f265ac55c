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
#include <span>
#include <string>
#include <vector>

namespace pmerge {

/// Early-stopped sorting times of M for one (p, k). A run ends after the
/// first pass without an exchange, and that pass is counted.
struct BenchResult {
  int p = 0;
  int k = 0;
  std::int64_t registers = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double avg_stages = 0.0;
  std::uint64_t max_stages = 0;
  double avg_passes = 0.0;
  std::uint64_t max_passes = 0;
  /// log2(N)^2, the reference scale for avg_stages.
  double log2n_squared = 0.0;

  friend bool operator==(const BenchResult&, const BenchResult&) = default;
};

/// `trials` uniform random permutations of 1..N, trial t drawn from
/// substream (seed, t). Throws PreconditionError for trials == 0 and
/// VerificationFailure if a run does not end sorted.
BenchResult bench_sort(int p, int k, std::uint64_t trials, std::uint64_t seed,
                       bool allow_p3 = false);

/// Same aggregation over caller-supplied inputs; seed is reported as 0.
BenchResult bench_inputs(int p, int k, std::span<const std::vector<std::int64_t>> inputs,
                         bool allow_p3 = false);

inline constexpr const char* kBenchCsvHeader =
    "p,k,N,trials,seed,avg_stages,max_stages,avg_passes,max_passes,log2N_sq";

/// Header line plus one row per result. PreconditionError if empty.
std::string results_to_csv(std::span<const BenchResult> results);

/// Line chart of avg_stages against log2 N, one series per p, with the
/// log2^2 N reference drawn dashed. PreconditionError if empty.
std::string results_to_svg(std::span<const BenchResult> results);

/// Merging time p(b-1) next to log2 N and the closed-form bound for every
/// (p, k) pair; pairs with k < p are skipped.
std::string merging_table_csv(std::span<const int> ps, std::span<const int> ks,
                              bool allow_p3 = false);

/// Writes `content` to `path`; throws Error on any I/O failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace pmerge
