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

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "pmerge/constructions.hpp"
#include "pmerge/packed.hpp"
#include "pmerge/simulator.hpp"
#include "pmerge/verify.hpp"

namespace {

using namespace pmerge;

void BM_BuildM(benchmark::State& state) {
  const NetworkParams prm = params(4, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_m(prm));
}
BENCHMARK(BM_BuildM)->DenseRange(6, 12, 2);

// 64 two-sorted 0-1 inputs through b-1 passes, one lane at a time.
void BM_MergeScalar01(benchmark::State& state) {
  const NetworkParams prm = params(4, static_cast<int>(state.range(0)));
  const Network m = build_m(prm);
  const TwoSortedInputs inputs(static_cast<std::size_t>(prm.registers));
  std::vector<std::vector<std::uint8_t>> batch;
  for (std::size_t i = 0; i < kLanes; ++i) batch.push_back(inputs.at(i * 97 % inputs.size()));
  for (auto _ : state) {
    for (const auto& in : batch) {
      auto v = in;
      for (std::int64_t pass = 0; pass < prm.merge_passes(); ++pass) {
        apply_network_in_place(m, std::span(v));
      }
      benchmark::DoNotOptimize(v.data());
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kLanes));
}
BENCHMARK(BM_MergeScalar01)->DenseRange(6, 10, 2);

// The same 64 inputs bit-packed into one word per register.
void BM_MergePacked01(benchmark::State& state) {
  const NetworkParams prm = params(4, static_cast<int>(state.range(0)));
  const Network m = build_m(prm);
  const TwoSortedInputs inputs(static_cast<std::size_t>(prm.registers));
  std::vector<std::vector<std::uint8_t>> batch;
  for (std::size_t i = 0; i < kLanes; ++i) batch.push_back(inputs.at(i * 97 % inputs.size()));
  const auto packed = pack_lanes(batch, m.register_count());
  for (auto _ : state) {
    auto words = packed;
    for (std::int64_t pass = 0; pass < prm.merge_passes(); ++pass) {
      apply_network_packed(m, std::span(words));
    }
    benchmark::DoNotOptimize(words.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kLanes));
}
BENCHMARK(BM_MergePacked01)->DenseRange(6, 10, 2);

void BM_SortPermutation(benchmark::State& state) {
  const PeriodicMerger merger(params(static_cast<int>(state.range(0)),
                                     static_cast<int>(state.range(1))));
  std::vector<std::int64_t> v(static_cast<std::size_t>(merger.params().registers));
  std::iota(v.begin(), v.end(), 0);
  std::mt19937_64 rng(1);
  for (auto _ : state) {
    state.PauseTiming();
    std::shuffle(v.begin(), v.end(), rng);
    state.ResumeTiming();
    benchmark::DoNotOptimize(merger.sort_until_done(v));
  }
}
BENCHMARK(BM_SortPermutation)->Args({4, 8})->Args({4, 10})->Args({5, 10});

}  // namespace

BENCHMARK_MAIN();
