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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "pmerge/simulator.hpp"
#include "pmerge/verify.hpp"

namespace pmerge {
namespace {

std::vector<std::int64_t> repeat(std::int64_t v, std::size_t n) {
  return std::vector<std::int64_t>(n, v);
}

std::vector<std::int64_t> concat(std::vector<std::int64_t> a, const std::vector<std::int64_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

TEST(RunPeriodic, SortedInputStopsAfterOnePass) {
  const Network m = build_m(params(4, 5));
  std::vector<int> v(60);
  std::iota(v.begin(), v.end(), 0);
  const auto t = run_periodic(m, v, RunOptions{.max_passes = 10, .early_stop = true});
  EXPECT_TRUE(t.stopped_early);
  EXPECT_EQ(t.passes_executed, 1U);
  EXPECT_EQ(t.stages_executed, 4U);
  EXPECT_EQ(t.final_values, v);
}

TEST(RunPeriodic, SnapshotsAndCounts) {
  const Network m = build_m(params(4, 5));
  std::vector<int> v(60);
  std::iota(v.rbegin(), v.rend(), 0);
  const auto t = run_periodic(m, v, RunOptions{.max_passes = 3, .record_snapshots = true});
  EXPECT_FALSE(t.stopped_early);
  EXPECT_EQ(t.passes_executed, 3U);
  EXPECT_EQ(t.stages_executed, 12U);
  ASSERT_EQ(t.snapshots.size(), 12U);
  EXPECT_EQ(t.snapshots.back(), t.final_values);
  EXPECT_THROW(run_periodic(m, std::vector<int>(59), RunOptions{}), StructureError);
}

TEST(RunPeriodic, PreservesMultiset) {
  const Network m = build_m(params(5, 7));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> dist(0, 9);
  std::vector<int> v(m.register_count());
  for (int& x : v) x = dist(rng);
  auto out = run_periodic(m, v, RunOptions{.max_passes = 4}).final_values;
  std::sort(v.begin(), v.end());
  std::sort(out.begin(), out.end());
  EXPECT_EQ(out, v);
}

TEST(RunPeriodic, MergesEveryTwoSortedInputOfM45InThreePasses) {
  const Network m = build_m(params(4, 5));
  const TwoSortedInputs inputs(60);
  for (std::uint64_t i = 0; i < inputs.size(); ++i) {
    const auto t = run_periodic(m, inputs.at(i), RunOptions{.max_passes = 3});
    ASSERT_TRUE(std::is_sorted(t.final_values.begin(), t.final_values.end())) << "input " << i;
  }
}

TEST(RunPeriodic, SortedPassesStaySorted) {
  const Network m = build_m(params(4, 6));
  std::mt19937_64 rng(5);
  std::vector<std::int64_t> v(m.register_count());
  std::iota(v.begin(), v.end(), 0);
  std::shuffle(v.begin(), v.end(), rng);
  const auto t = run_periodic(m, v, RunOptions{.max_passes = 200, .record_snapshots = true});
  bool seen_sorted = false;
  for (std::size_t s = 0; s < t.snapshots.size(); s += m.depth()) {
    const auto& end_of_pass = t.snapshots[s + m.depth() - 1];
    if (seen_sorted) {
      ASSERT_TRUE(std::is_sorted(end_of_pass.begin(), end_of_pass.end()));
    }
    seen_sorted = seen_sorted || std::is_sorted(end_of_pass.begin(), end_of_pass.end());
  }
  EXPECT_TRUE(seen_sorted);
}

TEST(Merge, ZeroOneExample) {
  // a = 0^5 1^2, b = 0^3 1^4 on M^4_4.
  const auto a = concat(repeat(0, 5), repeat(1, 2));
  const auto b = concat(repeat(0, 3), repeat(1, 4));
  EXPECT_EQ(merge(4, 4, a, b), concat(repeat(0, 8), repeat(1, 6)));
}

TEST(Merge, OddAndEvenNumbers) {
  std::vector<std::int64_t> a;
  std::vector<std::int64_t> b;
  for (int i = 0; i < 30; ++i) {
    a.push_back(2 * i + 1);
    b.push_back(2 * i + 2);
  }
  std::vector<std::int64_t> want(60);
  std::iota(want.begin(), want.end(), 1);
  EXPECT_EQ(merge(4, 5, a, b), want);
}

TEST(Merge, ConstantInput) {
  EXPECT_EQ(merge(6, 6, repeat(7, 31), repeat(7, 31)), repeat(7, 62));
}

TEST(Merge, MatchesReferenceOnRandomInputs) {
  const PeriodicMerger merger(params(5, 8));
  const auto half = static_cast<std::size_t>(merger.params().registers / 2);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::int64_t> dist(-50, 50);
  for (int t = 0; t < 20; ++t) {
    std::vector<std::int64_t> a(half);
    std::vector<std::int64_t> b(half);
    for (auto& x : a) x = dist(rng);
    for (auto& x : b) x = dist(rng);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(merger.merge(a, b), oracle_merge(a, b));
  }
}

TEST(Merge, Preconditions) {
  const auto sorted = repeat(0, 7);
  auto unsorted = sorted;
  unsorted[0] = 5;
  EXPECT_THROW(merge(4, 4, unsorted, sorted), PreconditionError);
  EXPECT_THROW(merge(4, 4, sorted, repeat(0, 6)), PreconditionError);
  EXPECT_THROW(merge(4, 3, sorted, sorted), ParameterError);
}

TEST(SortUntilDone, IdentityTakesOnePass) {
  std::vector<std::int64_t> v(60);
  std::iota(v.begin(), v.end(), 1);
  const auto t = sort_until_done(4, 5, v);
  EXPECT_EQ(t.stages_executed, 4U);
  EXPECT_EQ(t.final_values, v);
}

TEST(SortUntilDone, ReversedZeroOne) {
  auto v = concat(repeat(1, 30), repeat(0, 30));
  const auto t = sort_until_done(4, 5, v);
  EXPECT_EQ(t.final_values, concat(repeat(0, 30), repeat(1, 30)));
  EXPECT_TRUE(t.stopped_early);
  EXPECT_EQ(t.stages_executed, t.passes_executed * 4);
}

TEST(SortUntilDone, RandomPermutations) {
  std::mt19937_64 rng(1);
  for (auto [p, k] : {std::pair{4, 6}, std::pair{5, 7}, std::pair{6, 8}}) {
    const NetworkParams prm = params(p, k);
    std::vector<std::int64_t> v(static_cast<std::size_t>(prm.registers));
    std::iota(v.begin(), v.end(), 1);
    std::shuffle(v.begin(), v.end(), rng);
    auto want = v;
    std::sort(want.begin(), want.end());
    EXPECT_EQ(sort_until_done(p, k, v).final_values, want);
  }
}

TEST(SortUntilDone, LengthMismatch) {
  EXPECT_THROW(sort_until_done(4, 5, repeat(0, 59)), StructureError);
}

TEST(Interleave, OddAndEvenRegisters) {
  const std::vector<int> a{1, 3};
  const std::vector<int> b{2, 4};
  EXPECT_EQ(interleave<int>(a, b), (std::vector<int>{1, 2, 3, 4}));
}

}  // namespace
}  // namespace pmerge
