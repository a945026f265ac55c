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

#include "pmerge/simulator.hpp"

#include <string>

namespace pmerge {

PeriodicMerger::PeriodicMerger(const NetworkParams& prm) : params_(prm), network_(build_m(prm)) {}

std::vector<std::int64_t> PeriodicMerger::merge(std::span<const std::int64_t> a,
                                                std::span<const std::int64_t> b) const {
  const auto half = static_cast<std::size_t>(params_.registers / 2);
  if (a.size() != half || b.size() != half) {
    throw PreconditionError("merge inputs must each have " + std::to_string(half) +
                            " elements, got " + std::to_string(a.size()) + " and " +
                            std::to_string(b.size()));
  }
  if (!std::is_sorted(a.begin(), a.end()) || !std::is_sorted(b.begin(), b.end())) {
    throw PreconditionError("merge inputs must be non-decreasing");
  }
  RunOptions opt;
  opt.max_passes = static_cast<std::size_t>(params_.merge_passes());
  auto trace = run_periodic(network_, interleave(a, b), opt);
  if (!std::is_sorted(trace.final_values.begin(), trace.final_values.end())) {
    throw VerificationFailure("M(p=" + std::to_string(params_.p) + ", k=" +
                              std::to_string(params_.k) + ") left its input unsorted after " +
                              std::to_string(opt.max_passes) + " passes");
  }
  return std::move(trace.final_values);
}

RunTrace<std::int64_t> PeriodicMerger::sort_until_done(std::vector<std::int64_t> values) const {
  RunOptions opt;
  opt.max_passes = static_cast<std::size_t>(params_.registers);
  opt.early_stop = true;
  auto trace = run_periodic(network_, std::move(values), opt);
  if (!trace.stopped_early) {
    throw VerificationFailure("sorting did not settle within " + std::to_string(opt.max_passes) +
                              " passes");
  }
  if (!std::is_sorted(trace.final_values.begin(), trace.final_values.end())) {
    throw VerificationFailure("periodic run settled on an unsorted sequence");
  }
  return trace;
}

std::vector<std::int64_t> merge(int p, int k, std::span<const std::int64_t> a,
                                std::span<const std::int64_t> b) {
  return PeriodicMerger(params(p, k)).merge(a, b);
}

RunTrace<std::int64_t> sort_until_done(int p, int k, std::vector<std::int64_t> values) {
  return PeriodicMerger(params(p, k)).sort_until_done(std::move(values));
}

}  // namespace pmerge
