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

// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pmerge/bench.hpp"
#include "pmerge/verify.hpp"

namespace {

using namespace pmerge;

// Pinned settings.
constexpr std::uint64_t kColumnTrials = 10'000;
constexpr std::uint64_t kTheoremSamples = 100'000;
constexpr std::uint64_t kCwSamples = 100'000;
constexpr std::uint64_t kBenchTrials = 1'000;
constexpr double kBenchLow = 0.5;
constexpr double kBenchHigh = 1.5;
constexpr std::uint64_t kSeed = 1;
constexpr double kBudgetSeconds = 600;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
};

std::vector<std::pair<int, int>> grid() {
  std::vector<std::pair<int, int>> out;
  for (int p = 4; p <= 6; ++p) {
    for (int k = p; k <= 10; ++k) out.emplace_back(p, k);
  }
  return out;
}

CampaignOptions options() {
  CampaignOptions opt;
  opt.trials = kColumnTrials;
  opt.samples = kTheoremSamples;
  opt.seed = kSeed;
  opt.budget_seconds = kBudgetSeconds;
  return opt;
}

std::uint64_t zero_one_inputs(const VerificationReport& r) {
  for (const auto& [name, count] : r.tallies) {
    if (name == "zero_one_inputs") return count;
  }
  return 0;
}

void absorb(Outcome& o, const VerificationReport& r) {
  if (r.passed()) return;
  o.ok = false;
  o.detail << "\n    " << report_to_text(r);
}

Outcome merger() {
  Outcome o;
  std::uint64_t cases = 0;
  for (auto [p, k] : grid()) {
    const auto r = verify_merger(p, k, options());
    cases += r.cases_checked;
    const auto half = static_cast<std::uint64_t>(params(p, k).registers / 2);
    if (zero_one_inputs(r) != (half + 1) * (half + 1)) o.ok = false;
    absorb(o, r);
  }
  o.detail << " cases=" << cases;
  return o;
}

Outcome structure() {
  Outcome o;
  std::uint64_t checks = 0;
  for (auto [p, k] : grid()) {
    const auto r = verify_structure(p, k);
    checks += r.cases_checked;
    absorb(o, r);
  }
  o.detail << " checks=" << checks;
  return o;
}

Outcome columns() {
  Outcome o;
  std::uint64_t states = 0;
  for (auto [p, k] : grid()) {
    const auto r = verify_column_equivalence(p, k, options());
    states += r.cases_checked;
    if (r.cases_checked < kColumnTrials) o.ok = false;
    absorb(o, r);
  }
  o.detail << " states=" << states;
  return o;
}

Outcome theorems() {
  Outcome o;
  for (int k = 4; k <= 10; ++k) absorb(o, verify_interval_inclusions(k));
  std::uint64_t states = 0;
  for (auto [p, k] : grid()) {
    const auto r = verify_column_theorems(p, k, options());
    states += r.cases_checked;
    const bool must_be_exhaustive = (p == 4 && k <= 6) || p == k;
    if (must_be_exhaustive && r.coverage != Coverage::exhaustive) {
      o.ok = false;
      o.detail << "\n    (" << p << "," << k << ") not exhaustive";
    }
    absorb(o, r);
  }
  o.detail << " states=" << states;
  return o;
}

Outcome cw() {
  Outcome o;
  CampaignOptions opt = options();
  opt.samples = kCwSamples;
  for (int k = 1; k <= 6; ++k) absorb(o, verify_cw(k, opt));
  return o;
}

Outcome bench() {
  Outcome o;
  for (int p : {4, 5}) {
    for (int k : {9, 10}) {
      const BenchResult r = bench_sort(p, k, kBenchTrials, kSeed);
      const double ratio = r.avg_stages / r.log2n_squared;
      o.detail << " (" << p << "," << k << ")=" << std::fixed;
      o.detail.precision(3);
      o.detail << ratio;
      if (!(ratio >= kBenchLow && ratio <= kBenchHigh)) o.ok = false;
    }
  }
  return o;
}

Outcome determinism() {
  Outcome o;
  CampaignOptions opt = options();
  opt.trials = 2'000;
  opt.samples = 20'000;
  opt.seed = 12345;
  for (auto [p, k] : {std::pair{4, 7}, std::pair{5, 9}}) {
    const auto a = verify_all(p, k, opt);
    const auto b = verify_all(p, k, opt);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (report_to_json(a[i]) != report_to_json(b[i])) {
        o.ok = false;
        o.detail << "\n    " << a[i].claim << " (" << p << "," << k << ") differs";
      }
    }
  }
  if (!(bench_sort(4, 9, 200, 77) == bench_sort(4, 9, 200, 77))) {
    o.ok = false;
    o.detail << "\n    bench differs";
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"merger exhaustive over {4,5,6}x{p..10}", merger},
      {"delay, stage structure and depth bounds", structure},
      {"column model matches the network", columns},
      {"interval inclusions, containment, terminal state, flatness", theorems},
      {"CW merging and sorting", cw},
      {"average sorting stages within [0.5,1.5] log2^2 N", bench},
      {"seeded campaigns reproduce byte-identical reports", determinism},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << " exception: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.ok;
    std::printf("criterion %zu: %s %s (%.1fs)%s\n", i + 1, o.ok ? "PASS" : "FAIL",
                criteria[i].first.c_str(), secs, o.detail.str().c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
