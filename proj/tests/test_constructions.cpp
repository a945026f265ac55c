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

#include <set>

#include "pmerge/constructions.hpp"
#include "pmerge/network_io.hpp"
#include "pmerge/verify.hpp"

namespace pmerge {
namespace {

std::vector<std::size_t> stage_sizes(const Network& net) {
  std::vector<std::size_t> out;
  for (const Stage& s : net.stages()) out.push_back(s.size());
  return out;
}

TEST(Params, FrozenValues) {
  const NetworkParams a = params(4, 5);
  EXPECT_EQ(a.column_height, 15);
  EXPECT_EQ(a.columns, 4);
  EXPECT_EQ(a.registers, 60);
  EXPECT_EQ(a.depth, 6);

  const NetworkParams b = params(4, 4);
  EXPECT_EQ(b.column_height, 7);
  EXPECT_EQ(b.columns, 2);
  EXPECT_EQ(b.registers, 14);
  EXPECT_EQ(b.depth, 4);

  const NetworkParams c = params(6, 6);
  EXPECT_EQ(c.column_height, 31);
  EXPECT_EQ(c.columns, 2);
  EXPECT_EQ(c.registers, 62);
  EXPECT_EQ(c.depth, 6);

  // (5,7): (k-2)/(p-2) = 5/3 rounds up to 2 column pairs.
  const NetworkParams d = params(5, 7);
  EXPECT_EQ(d.columns, 4);
  EXPECT_EQ(d.shift_count(), 1);
  EXPECT_EQ(d.merge_stages(), 15);
}

TEST(Params, OffsetsDecreaseToZero) {
  for (int k = 4; k <= 10; ++k) {
    const NetworkParams prm = params(4, k);
    for (int s = 1; s < k - 1; ++s) EXPECT_GT(prm.offset(s), prm.offset(s + 1));
    EXPECT_EQ(prm.offset(k - 1), 0);
    EXPECT_EQ(prm.offset(1), prm.column_height / 2);
    EXPECT_THROW(prm.offset(0), ParameterError);
    EXPECT_THROW(prm.offset(k), ParameterError);
  }
}

TEST(Params, Errors) {
  EXPECT_THROW(params(4, 3), ParameterError);
  EXPECT_THROW(params(3, 5), ParameterError);
  EXPECT_THROW(params(2, 5, true), ParameterError);
  EXPECT_THROW(params(4, kMaxExponent + 1), ParameterError);
  EXPECT_NO_THROW(params(3, 9, true));
}

TEST(BuildCw, SmallListings) {
  EXPECT_EQ(network_to_listing(build_cw(1)), "registers: 2\nstage 1: [0:1]\n");
  EXPECT_EQ(network_to_listing(build_cw(2)), "registers: 4\nstage 1: [0:1] [2:3]\nstage 2: [1:2]\n");
  EXPECT_EQ(network_to_listing(build_cw(3)),
            "registers: 8\n"
            "stage 1: [0:1] [2:3] [4:5] [6:7]\n"
            "stage 2: [1:4] [3:6]\n"
            "stage 3: [1:2] [3:4] [5:6]\n");
}

TEST(BuildCw, Cw5Shape) {
  const Network cw = build_cw(5);
  EXPECT_EQ(cw.register_count(), 32U);
  EXPECT_EQ(stage_sizes(cw), (std::vector<std::size_t>{16, 8, 12, 14, 15}));
}

TEST(BuildP, P45StageAssignment) {
  const Network p = build_p(params(4, 5));
  EXPECT_EQ(p.register_count(), 62U);
  // S1 short, S2/S3 long with h = 7, 3, S4 shift, S5/S6 long with h = 1, 0.
  EXPECT_EQ(stage_sizes(p), (std::vector<std::size_t>{16, 8, 12, 30, 14, 15}));
  EXPECT_EQ(p.stage(0).comparators().front(), (Comparator{0, 1}));
  EXPECT_EQ(p.stage(0).comparators().back(), (Comparator{60, 61}));
  EXPECT_EQ(p.stage(1).comparators().front(), (Comparator{1, 32}));
  EXPECT_EQ(p.stage(2).comparators().front(), (Comparator{1, 16}));
  EXPECT_EQ(p.stage(3).comparators()[0], (Comparator{1, 2}));
  EXPECT_EQ(p.stage(3).comparators()[1], (Comparator{3, 4}));
  EXPECT_EQ(p.stage(4).comparators().front(), (Comparator{2, 7}));
  EXPECT_EQ(p.stage(5).comparators().front(), (Comparator{2, 3}));
}

TEST(BuildP, SquareCaseIsCw) {
  // With k = p there is one column pair and P^p_p is CW_p.
  for (int p = 4; p <= 7; ++p) EXPECT_EQ(build_p(params(p, p)), build_cw(p)) << "p=" << p;
}

TEST(BuildP, DelayAndDepthOverGrid) {
  for (int p = 4; p <= 6; ++p) {
    for (int k = p; k <= 10; ++k) {
      const NetworkParams prm = params(p, k);
      const Network net = build_p(prm);
      EXPECT_EQ(delay(net), static_cast<std::size_t>(p)) << p << "," << k;
      EXPECT_EQ(net.depth(), static_cast<std::size_t>(prm.depth)) << p << "," << k;
      EXPECT_EQ(net.register_count(), static_cast<std::size_t>(prm.registers + 2));
    }
  }
}

TEST(BuildM, Shapes) {
  const Network m45 = build_m(params(4, 5));
  EXPECT_EQ(m45.register_count(), 60U);
  EXPECT_EQ(stage_sizes(m45), (std::vector<std::size_t>{28, 23, 12, 30}));
  const Network m46 = build_m(params(4, 6));
  EXPECT_EQ(m46.register_count(), 124U);
  EXPECT_EQ(m46.depth(), 4U);
  for (int p = 4; p <= 6; ++p) {
    for (int k = p; k <= 10; ++k) {
      EXPECT_EQ(build_m(params(p, k)).depth(), static_cast<std::size_t>(p)) << p << "," << k;
    }
  }
}

TEST(BuildM, ContainsEveryNeighbourComparator) {
  for (auto [p, k] : {std::pair{4, 5}, std::pair{4, 6}, std::pair{5, 7}, std::pair{6, 9}}) {
    const Network m = build_m(params(p, k));
    std::set<Comparator> all;
    for (const Stage& s : m.stages()) all.insert(s.comparators().begin(), s.comparators().end());
    for (std::size_t r = 0; r + 1 < m.register_count(); ++r) {
      EXPECT_TRUE(all.contains({r, r + 1})) << "[" << r << ":" << r + 1 << "] in " << p << "," << k;
    }
  }
}

TEST(BuildM, StagesAreUnionsOfUnpackedStagesPApart) {
  for (auto [p, k] : {std::pair{4, 5}, std::pair{4, 9}, std::pair{5, 10}, std::pair{6, 8}}) {
    const NetworkParams prm = params(p, k);
    const Network full = build_p(prm);
    const Network m = build_m(prm);
    const auto top = static_cast<std::size_t>(prm.registers + 1);
    for (int x = 0; x < p; ++x) {
      std::vector<Comparator> want;
      for (std::size_t s = static_cast<std::size_t>(x); s < full.depth(); s += static_cast<std::size_t>(p)) {
        for (const Comparator& c : full.stage(s).comparators()) {
          if (c.lo != 0 && c.hi != top) want.push_back({c.lo - 1, c.hi - 1});
        }
      }
      std::sort(want.begin(), want.end());
      const auto got = m.stage(static_cast<std::size_t>(x)).comparators();
      EXPECT_TRUE(std::equal(got.begin(), got.end(), want.begin(), want.end()))
          << p << "," << k << " stage " << x + 1;
    }
  }
}

TEST(BuildM, OnePassEqualsUnpackedRunWhenDepthIsP) {
  for (int p = 4; p <= 6; ++p) {
    const NetworkParams prm = params(p, p);
    const Network full = build_p(prm);
    const Network m = build_m(prm);
    const TwoSortedInputs inputs(static_cast<std::size_t>(prm.registers));
    for (std::uint64_t i = 0; i < inputs.size(); ++i) {
      const auto in = inputs.at(i);
      std::vector<std::uint8_t> padded{0};
      padded.insert(padded.end(), in.begin(), in.end());
      padded.push_back(1);
      const auto a = apply_network(full, padded).values;
      const auto b = apply_network(m, in).values;
      ASSERT_TRUE(std::equal(b.begin(), b.end(), a.begin() + 1)) << "p=" << p << " input " << i;
    }
  }
}

TEST(BuildM, PeriodicRunDiffersFromUnpackedRunWhenDepthExceedsP) {
  // (4,9): depth 12 = 3p, yet three passes of M are not one run of P on
  // this two-sorted input; the later stages fire early in the periodic run.
  const NetworkParams prm = params(4, 9);
  const Network full = build_p(prm);
  const std::vector<std::size_t> ends{0, static_cast<std::size_t>(prm.registers + 1)};
  const Network inner = restrict_registers(full, ends);
  const Network m = build_m(prm);
  const TwoSortedInputs inputs(static_cast<std::size_t>(prm.registers));
  const auto in = inputs.at(3);
  ASSERT_EQ(inputs.ones(3), std::make_pair(std::size_t{0}, std::size_t{3}));
  auto periodic = in;
  for (int pass = 0; pass < 3; ++pass) apply_network_in_place(m, std::span(periodic));
  EXPECT_NE(apply_network(inner, in).values, periodic);
}

TEST(BuildM, P3Construction) {
  const NetworkParams prm = params(3, 9, true);
  EXPECT_EQ(prm.columns, 14);
  EXPECT_EQ(build_m(prm).depth(), 3U);
  EXPECT_EQ(delay(build_p(prm)), 3U);
}

}  // namespace
}  // namespace pmerge
