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

#include "pmerge/bench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>

#include "pmerge/constructions.hpp"
#include "pmerge/error.hpp"
#include "pmerge/parallel.hpp"
#include "pmerge/simulator.hpp"

namespace pmerge {

namespace {

struct Tally {
  std::uint64_t runs = 0;
  std::uint64_t stages = 0;
  std::uint64_t passes = 0;
  std::uint64_t max_stages = 0;
  std::uint64_t max_passes = 0;

  void add(const RunTrace<std::int64_t>& t) {
    ++runs;
    stages += t.stages_executed;
    passes += t.passes_executed;
    max_stages = std::max<std::uint64_t>(max_stages, t.stages_executed);
    max_passes = std::max<std::uint64_t>(max_passes, t.passes_executed);
  }
  void add(const Tally& o) {
    runs += o.runs;
    stages += o.stages;
    passes += o.passes;
    max_stages = std::max(max_stages, o.max_stages);
    max_passes = std::max(max_passes, o.max_passes);
  }
};

BenchResult summarize(const NetworkParams& prm, const Tally& t, std::uint64_t seed) {
  BenchResult r;
  r.p = prm.p;
  r.k = prm.k;
  r.registers = prm.registers;
  r.trials = t.runs;
  r.seed = seed;
  // Integer sums keep the averages independent of aggregation order.
  r.avg_stages = static_cast<double>(t.stages) / static_cast<double>(t.runs);
  r.max_stages = t.max_stages;
  r.avg_passes = static_cast<double>(t.passes) / static_cast<double>(t.runs);
  r.max_passes = t.max_passes;
  const double lg = std::log2(static_cast<double>(prm.registers));
  r.log2n_squared = lg * lg;
  return r;
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace

BenchResult bench_sort(int p, int k, std::uint64_t trials, std::uint64_t seed, bool allow_p3) {
  if (trials == 0) throw PreconditionError("bench needs at least one trial");
  const NetworkParams prm = params(p, k, allow_p3);
  const PeriodicMerger merger(prm);
  const auto n = static_cast<std::size_t>(prm.registers);

  constexpr std::uint64_t kChunk = 16;
  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<Tally> parts(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    std::vector<std::int64_t> perm(n);
    for (std::uint64_t t = c * kChunk; t < std::min(trials, (c + 1) * kChunk); ++t) {
      auto rng = substream(seed, t);
      std::iota(perm.begin(), perm.end(), 1);
      // Explicit Fisher-Yates: std::shuffle's draw sequence is not pinned
      // down by the standard.
      for (std::size_t i = n - 1; i > 0; --i) {
        const std::uint64_t j = rng() % (i + 1);
        std::swap(perm[i], perm[j]);
      }
      parts[c].add(merger.sort_until_done(perm));
    }
  });
  Tally total;
  for (const Tally& t : parts) total.add(t);
  return summarize(prm, total, seed);
}

BenchResult bench_inputs(int p, int k, std::span<const std::vector<std::int64_t>> inputs,
                         bool allow_p3) {
  if (inputs.empty()) throw PreconditionError("bench needs at least one input");
  const NetworkParams prm = params(p, k, allow_p3);
  const PeriodicMerger merger(prm);
  Tally total;
  for (const auto& in : inputs) total.add(merger.sort_until_done(in));
  return summarize(prm, total, 0);
}

std::string results_to_csv(std::span<const BenchResult> results) {
  if (results.empty()) throw PreconditionError("no bench results to write");
  std::ostringstream os;
  os << kBenchCsvHeader << '\n';
  for (const BenchResult& r : results) {
    os << r.p << ',' << r.k << ',' << r.registers << ',' << r.trials << ',' << r.seed << ','
       << fixed(r.avg_stages, 4) << ',' << r.max_stages << ',' << fixed(r.avg_passes, 4) << ','
       << r.max_passes << ',' << fixed(r.log2n_squared, 4) << '\n';
  }
  return os.str();
}

std::string results_to_svg(std::span<const BenchResult> results) {
  if (results.empty()) throw PreconditionError("no bench results to plot");
  constexpr double kWidth = 640;
  constexpr double kHeight = 420;
  constexpr double kMargin = 56;

  std::map<int, std::vector<const BenchResult*>> series;
  double x_lo = 1e300;
  double x_hi = -1e300;
  double y_hi = 0;
  for (const BenchResult& r : results) {
    series[r.p].push_back(&r);
    const double x = std::log2(static_cast<double>(r.registers));
    x_lo = std::min(x_lo, x);
    x_hi = std::max(x_hi, x);
    y_hi = std::max({y_hi, r.avg_stages, r.log2n_squared});
  }
  if (x_hi - x_lo < 1) {
    x_lo -= 0.5;
    x_hi += 0.5;
  }
  y_hi *= 1.1;
  const auto sx = [&](double x) {
    return kMargin + (x - x_lo) / (x_hi - x_lo) * (kWidth - 2 * kMargin);
  };
  const auto sy = [&](double y) { return kHeight - kMargin - y / y_hi * (kHeight - 2 * kMargin); };

  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                            "#ff7f0e", "#8c564b"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
     << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
     << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 16
     << "\" text-anchor=\"middle\">log2 N</text>\n";
  os << "<text x=\"16\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 16 " << kHeight / 2
     << ")\" text-anchor=\"middle\">average stages</text>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double y = y_hi * tick / 4;
    os << "<text x=\"" << kMargin - 6 << "\" y=\"" << fixed(sy(y) + 4, 1)
       << "\" text-anchor=\"end\">" << fixed(y, 0) << "</text>\n";
  }

  auto polyline = [&](const std::vector<std::pair<double, double>>& pts, const char* color,
                      bool dashed) {
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\""
       << (dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
    for (const auto& [x, y] : pts) os << fixed(sx(x), 1) << ',' << fixed(sy(y), 1) << ' ';
    os << "\"/>\n";
  };

  std::map<double, double> reference;
  std::size_t idx = 0;
  double legend_y = kMargin;
  for (auto& [p, rows] : series) {
    std::sort(rows.begin(), rows.end(),
              [](const BenchResult* a, const BenchResult* b) { return a->registers < b->registers; });
    std::vector<std::pair<double, double>> pts;
    for (const BenchResult* r : rows) {
      const double x = std::log2(static_cast<double>(r->registers));
      pts.emplace_back(x, r->avg_stages);
      reference[x] = r->log2n_squared;
    }
    const char* color = kColors[idx++ % std::size(kColors)];
    polyline(pts, color, false);
    for (const auto& [x, y] : pts) {
      os << "<circle cx=\"" << fixed(sx(x), 1) << "\" cy=\"" << fixed(sy(y), 1)
         << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    os << "<text x=\"" << kWidth - kMargin - 90 << "\" y=\"" << legend_y << "\" fill=\"" << color
       << "\">p = " << p << "</text>\n";
    legend_y += 16;
  }
  std::vector<std::pair<double, double>> ref(reference.begin(), reference.end());
  polyline(ref, "#555555", true);
  os << "<text x=\"" << kWidth - kMargin - 90 << "\" y=\"" << legend_y
     << "\" fill=\"#555555\">log2^2 N</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::string merging_table_csv(std::span<const int> ps, std::span<const int> ks, bool allow_p3) {
  std::ostringstream os;
  os << "p,k,N,merge_passes,merge_stages,log2N,bound\n";
  for (int p : ps) {
    for (int k : ks) {
      if (k < p) continue;
      const NetworkParams prm = params(p, k, allow_p3);
      const double lg = std::log2(static_cast<double>(prm.registers));
      const double bound = 2.0 * p / (p - 2) * lg + static_cast<double>(p) * (p - 8) / (p - 2);
      os << p << ',' << k << ',' << prm.registers << ',' << prm.merge_passes() << ','
         << prm.merge_stages() << ',' << fixed(lg, 4) << ',' << fixed(bound, 4) << '\n';
    }
  }
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << content;
  out.close();
  if (!out) throw Error("failed writing " + path);
}

}  // namespace pmerge
