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

#include <cmath>
#include <numeric>

#include "pmerge/bench.hpp"
#include "pmerge/constructions.hpp"

namespace pmerge {
namespace {

TEST(BenchInputs, SortedInputTakesOnePass) {
  std::vector<std::int64_t> v(60);
  std::iota(v.begin(), v.end(), 1);
  const std::vector<std::vector<std::int64_t>> inputs{v, v};
  const BenchResult r = bench_inputs(4, 5, inputs);
  EXPECT_EQ(r.trials, 2U);
  EXPECT_EQ(r.seed, 0U);
  EXPECT_DOUBLE_EQ(r.avg_stages, 4.0);
  EXPECT_EQ(r.max_stages, 4U);
  EXPECT_DOUBLE_EQ(r.avg_passes, 1.0);
  EXPECT_EQ(r.registers, 60);
  EXPECT_NEAR(r.log2n_squared, std::log2(60.0) * std::log2(60.0), 1e-12);
}

TEST(BenchInputs, Errors) {
  EXPECT_THROW(bench_inputs(4, 5, {}), PreconditionError);
  const std::vector<std::vector<std::int64_t>> short_input{{1, 2, 3}};
  EXPECT_THROW(bench_inputs(4, 5, short_input), StructureError);
  EXPECT_THROW(bench_sort(4, 5, 0, 1), PreconditionError);
}

TEST(BenchSort, DeterministicAndSeedSensitive) {
  const BenchResult a = bench_sort(4, 6, 40, 7);
  EXPECT_EQ(a, bench_sort(4, 6, 40, 7));
  EXPECT_NE(a, bench_sort(4, 6, 40, 8));
  EXPECT_EQ(a.trials, 40U);
  EXPECT_GE(a.max_stages, static_cast<std::uint64_t>(a.avg_stages));
  EXPECT_DOUBLE_EQ(a.avg_stages, 4.0 * a.avg_passes);
}

TEST(BenchSort, ReverseIsWorseThanSorted) {
  std::vector<std::int64_t> v(60);
  std::iota(v.rbegin(), v.rend(), 1);
  const std::vector<std::vector<std::int64_t>> inputs{v};
  EXPECT_GT(bench_inputs(4, 5, inputs).avg_stages, 4.0);
}

TEST(BenchOutput, Csv) {
  BenchResult r;
  r.p = 4;
  r.k = 5;
  r.registers = 60;
  r.trials = 2;
  r.seed = 9;
  r.avg_stages = 10.5;
  r.max_stages = 12;
  r.avg_passes = 2.625;
  r.max_passes = 3;
  r.log2n_squared = 35.0;
  const std::vector<BenchResult> rs{r};
  EXPECT_EQ(results_to_csv(rs), std::string(kBenchCsvHeader) +
                                    "\n4,5,60,2,9,10.5000,12,2.6250,3,35.0000\n");
  EXPECT_THROW(results_to_csv({}), PreconditionError);
}

TEST(BenchOutput, Svg) {
  const std::vector<BenchResult> rs{bench_sort(4, 5, 4, 1), bench_sort(4, 6, 4, 1),
                                    bench_sort(5, 6, 4, 1)};
  const std::string svg = results_to_svg(rs);
  EXPECT_EQ(svg.rfind("<svg", 0), 0U);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("p = 4"), std::string::npos);
  EXPECT_NE(svg.find("p = 5"), std::string::npos);
  EXPECT_THROW(results_to_svg({}), PreconditionError);
}

TEST(BenchOutput, MergingTable) {
  const std::vector<int> ps{4, 5};
  const std::vector<int> ks{4, 5};
  const std::string csv = merging_table_csv(ps, ks);
  EXPECT_EQ(csv.rfind("p,k,N,merge_passes,merge_stages,log2N,bound\n", 0), 0U);
  EXPECT_NE(csv.find("\n4,4,14,1,4,"), std::string::npos);
  EXPECT_NE(csv.find("\n4,5,60,3,12,"), std::string::npos);
  EXPECT_NE(csv.find("\n5,5,30,1,5,"), std::string::npos);
  EXPECT_EQ(csv.find("\n5,4,"), std::string::npos);
}

TEST(WriteTextFile, BadPathThrows) {
  EXPECT_THROW(write_text_file("/nonexistent-dir/x/y.csv", "a"), Error);
}

}  // namespace
}  // namespace pmerge
