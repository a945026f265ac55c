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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pmerge/constructions.hpp"
#include "pmerge/network.hpp"

namespace pmerge {

/// Outcome of repeatedly applying a periodic network.
template <class T>
struct RunTrace {
  /// Register contents after every executed stage; filled only on request.
  std::vector<std::vector<T>> snapshots;
  std::size_t stages_executed = 0;
  std::size_t passes_executed = 0;
  /// True iff the run ended because a whole pass exchanged nothing.
  bool stopped_early = false;
  std::vector<T> final_values;
};

struct RunOptions {
  std::size_t max_passes = 1;
  bool early_stop = false;
  bool record_snapshots = false;
};

/// Cycles the stages of `net` up to `max_passes` times. With early_stop the
/// run ends after the first pass in which no comparator exchanged; that pass
/// is counted in full.
template <class T>
RunTrace<T> run_periodic(const Network& net, std::vector<T> values, const RunOptions& opt) {
  if (values.size() != net.register_count()) {
    detail::throw_length_mismatch(net.register_count(), values.size());
  }
  RunTrace<T> trace;
  std::span<T> regs(values);
  for (std::size_t pass = 0; pass < opt.max_passes; ++pass) {
    bool exchanged = false;
    for (const Stage& stage : net.stages()) {
      exchanged |= apply_stage_in_place(stage, regs);
      ++trace.stages_executed;
      if (opt.record_snapshots) trace.snapshots.push_back(values);
    }
    ++trace.passes_executed;
    if (opt.early_stop && !exchanged) {
      trace.stopped_early = true;
      break;
    }
  }
  trace.final_values = std::move(values);
  return trace;
}

/// The p-periodic merger M for fixed (p, k), reused across runs.
class PeriodicMerger {
 public:
  explicit PeriodicMerger(const NetworkParams& prm);

  const NetworkParams& params() const { return params_; }
  const Network& network() const { return network_; }

  /// Interleaves `a` into registers 0, 2, 4, ... and `b` into 1, 3, 5, ...
  /// (the odd and even registers of the 1-based numbering), runs b-1 passes
  /// and returns the registers. Throws PreconditionError if an input is not
  /// sorted or has the wrong length, VerificationFailure if the output is
  /// not sorted.
  std::vector<std::int64_t> merge(std::span<const std::int64_t> a,
                                  std::span<const std::int64_t> b) const;

  /// Runs with early stopping and a cap of N passes. Throws
  /// VerificationFailure if the cap is hit or the result is unsorted.
  RunTrace<std::int64_t> sort_until_done(std::vector<std::int64_t> values) const;

 private:
  NetworkParams params_;
  Network network_;
};

/// Interleaves two equally long sequences: out[2i] = a[i], out[2i+1] = b[i].
template <class T>
std::vector<T> interleave(std::span<const T> a, std::span<const T> b) {
  std::vector<T> out;
  out.reserve(a.size() + b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.push_back(a[i]);
    out.push_back(b[i]);
  }
  return out;
}

std::vector<std::int64_t> merge(int p, int k, std::span<const std::int64_t> a,
                                std::span<const std::int64_t> b);

RunTrace<std::int64_t> sort_until_done(int p, int k, std::vector<std::int64_t> values);

}  // namespace pmerge
