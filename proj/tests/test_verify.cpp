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

#include "json.hpp"
#include "pmerge/intervals.hpp"
#include "pmerge/verify.hpp"

namespace pmerge {
namespace {

CampaignOptions quick() {
  CampaignOptions opt;
  opt.trials = 200;
  opt.samples = 2'000;
  opt.seed = 3;
  opt.budget_seconds = 0;
  return opt;
}

std::int64_t tally(const VerificationReport& r, const std::string& name) {
  for (const auto& [key, value] : r.tallies) {
    if (key == name) return static_cast<std::int64_t>(value);
  }
  return 0;
}

TEST(OracleMerge, Examples) {
  const std::vector<std::int64_t> a{1, 4, 4, 9};
  const std::vector<std::int64_t> b{-2, 4, 10};
  EXPECT_EQ(oracle_merge(a, b), (std::vector<std::int64_t>{-2, 1, 4, 4, 4, 9, 10}));
  EXPECT_EQ(oracle_merge({}, b), b);
  const std::vector<std::int64_t> bad{2, 1};
  EXPECT_THROW(oracle_merge(bad, b), PreconditionError);
}

TEST(TwoSortedInputs, SmallEnumerations) {
  const auto two = enumerate_two_sorted_01(2);
  const std::vector<std::vector<std::uint8_t>> want{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  auto sorted = two;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, want);
  EXPECT_EQ(enumerate_two_sorted_01(4).size(), 9U);
  EXPECT_EQ(enumerate_two_sorted_01(14).size(), 64U);
  EXPECT_THROW(TwoSortedInputs(5), PreconditionError);
}

TEST(TwoSortedInputs, MembersAreTwoSortedAndDistinct) {
  const TwoSortedInputs inputs(10);
  std::vector<std::vector<std::uint8_t>> all;
  for (std::uint64_t i = 0; i < inputs.size(); ++i) {
    const auto v = inputs.at(i);
    const auto [even_ones, odd_ones] = inputs.ones(i);
    std::vector<std::uint8_t> even, odd;
    for (std::size_t r = 0; r < v.size(); ++r) (r % 2 == 0 ? even : odd).push_back(v[r]);
    EXPECT_TRUE(std::is_sorted(even.begin(), even.end()));
    EXPECT_TRUE(std::is_sorted(odd.begin(), odd.end()));
    EXPECT_EQ(static_cast<std::size_t>(std::count(even.begin(), even.end(), 1)), even_ones);
    EXPECT_EQ(static_cast<std::size_t>(std::count(odd.begin(), odd.end(), 1)), odd_ones);
    all.push_back(v);
  }
  std::sort(all.begin(), all.end());
  EXPECT_EQ(std::unique(all.begin(), all.end()), all.end());
  EXPECT_EQ(all.size(), 36U);
}

TEST(VerifyMerger, SmallGrid) {
  for (auto [p, k] : {std::pair{4, 4}, std::pair{4, 6}, std::pair{5, 7}, std::pair{6, 6}}) {
    const auto r = verify_merger(p, k, quick());
    EXPECT_TRUE(r.passed()) << report_to_text(r);
    // 0-1 inputs are exhaustive, integer spot checks are sampled.
    EXPECT_EQ(r.coverage, Coverage::mixed);
    const auto n = params(p, k).registers;
    EXPECT_EQ(tally(r, "zero_one_inputs"), (n / 2 + 1) * (n / 2 + 1));
  }
}

TEST(VerifyCw, SmallK) {
  for (int k = 1; k <= 5; ++k) {
    const auto r = verify_cw(k, quick());
    EXPECT_TRUE(r.passed()) << report_to_text(r);
  }
  EXPECT_EQ(verify_cw(4, quick()).coverage, Coverage::exhaustive);
  EXPECT_EQ(verify_cw(5, quick()).coverage, Coverage::mixed);
}

TEST(VerifyColumns, SmallGrid) {
  for (auto [p, k] : {std::pair{4, 5}, std::pair{5, 8}, std::pair{6, 9}}) {
    const auto r = verify_column_equivalence(p, k, quick());
    EXPECT_TRUE(r.passed()) << report_to_text(r);
    EXPECT_EQ(tally(r, "random_states"), 200);
  }
}

TEST(VerifyIntervals, AllK) {
  for (int k = 4; k <= 10; ++k) {
    const auto r = verify_interval_inclusions(k);
    EXPECT_TRUE(r.passed()) << report_to_text(r);
    EXPECT_EQ(r.coverage, Coverage::exhaustive);
  }
}

TEST(VerifyTheorems, PassingGridPoints) {
  for (auto [p, k] : {std::pair{4, 5}, std::pair{4, 8}, std::pair{5, 7}, std::pair{6, 10}}) {
    const auto r = verify_column_theorems(p, k, quick());
    EXPECT_TRUE(r.passed()) << report_to_text(r);
  }
  EXPECT_EQ(verify_column_theorems(4, 5, quick()).coverage, Coverage::exhaustive);
}

TEST(VerifyTheorems, P4K9LeavesTheFirstSetButStillFlattens) {
  // b/2 = 4 is a multiple of p but only 3 shift stages exist, so Q_1 cannot
  // fold the middle pair and X_1 is too tight.
  const auto r = verify_column_theorems(4, 9, quick());
  EXPECT_FALSE(r.passed());
  EXPECT_GT(tally(r, "containment_failures"), 0);
  EXPECT_EQ(tally(r, "flatness_failures"), 0);
  EXPECT_EQ(tally(r, "terminal_failures"), 0);
  ASSERT_FALSE(r.failures.empty());
  EXPECT_EQ(r.failures.front().what, "reduced state outside X_1");
}

TEST(VerifyTheorems, PinnedP4K9Counterexample) {
  const NetworkParams prm = params(4, 9);
  const ColumnDynamics dyn(prm);
  const StateSequences seqs(prm);
  const ColumnState c{{34, 101, 34, 101, 34, 101, 34, 101}};
  ASSERT_TRUE(is_2flat(c) && is_balanced(c));
  const ReducedState d = reduce(dyn.q_stage(1, c));
  EXPECT_FALSE(contained(d, seqs.x(1), 9)) << to_string(d) << " vs " << to_string(seqs.x(1), 9);
  EXPECT_TRUE(contained(reduce(dyn.run(c, 2)), seqs.x(2), 9));
  EXPECT_TRUE(is_flat(dyn.run(c, prm.merge_stages())));
}

TEST(VerifyStructure, Grid) {
  for (int p = 4; p <= 6; ++p) {
    for (int k = p; k <= 10; ++k) {
      const auto r = verify_structure(p, k);
      EXPECT_TRUE(r.passed()) << report_to_text(r);
    }
  }
}

TEST(Reports, JsonIsDeterministic) {
  const auto a = report_to_json(verify_column_equivalence(4, 6, quick()));
  const auto b = report_to_json(verify_column_equivalence(4, 6, quick()));
  EXPECT_EQ(a, b);
  const auto j = nlohmann::json::parse(a);
  EXPECT_EQ(j["claim"], "columns");
  EXPECT_EQ(j["seed"], 3);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_FALSE(j.contains("elapsed_seconds"));
  EXPECT_TRUE(nlohmann::json::parse(report_to_json(verify_structure(4, 5), true))
                  .contains("elapsed_seconds"));

  auto other = quick();
  other.seed = 4;
  EXPECT_NE(report_to_json(verify_column_equivalence(4, 6, other)), a);
}

TEST(Reports, TinyBudgetIsTruncated) {
  auto opt = quick();
  opt.samples = 50'000'000;
  opt.budget_seconds = 0.05;
  const auto r = verify_cw(12, opt);
  EXPECT_EQ(r.coverage, Coverage::truncated);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.failure_count, 0U);
  EXPECT_NE(report_to_text(r).find("truncated"), std::string::npos);
}

TEST(Reports, CoverageNames) {
  EXPECT_EQ(to_string(Coverage::exhaustive), "exhaustive");
  EXPECT_EQ(to_string(Coverage::sampled), "sampled");
  EXPECT_EQ(to_string(Coverage::mixed), "mixed");
  EXPECT_EQ(to_string(Coverage::truncated), "truncated");
}

TEST(VerifyAll, CoversEveryClaim) {
  const auto reports = verify_all(4, 5, quick());
  std::vector<std::string> claims;
  for (const auto& r : reports) {
    claims.push_back(r.claim);
    EXPECT_TRUE(r.passed()) << report_to_text(r);
  }
  for (const char* want : {"merger", "cw", "columns", "theorems", "structure"}) {
    EXPECT_NE(std::find(claims.begin(), claims.end(), want), claims.end()) << want;
  }
}

}  // namespace
}  // namespace pmerge
