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

#include "pmerge/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

#include "pmerge/column_model.hpp"
#include "pmerge/intervals.hpp"
#include "pmerge/packed.hpp"
#include "pmerge/parallel.hpp"
#include "pmerge/simulator.hpp"

namespace pmerge {

namespace {

using Clock = std::chrono::steady_clock;

class Deadline {
 public:
  explicit Deadline(double budget_seconds)
      : start_(Clock::now()), budget_(budget_seconds) {}

  bool expired() const { return budget_ > 0 && elapsed() > budget_; }
  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  Clock::time_point start_;
  double budget_;
};

// Collects the outcome of one chunk of a sweep. Chunks are merged in index
// order, so the merged report does not depend on thread scheduling.
class Sink {
 public:
  explicit Sink(std::size_t max_examples) : max_examples_(max_examples) {}

  void checked(std::uint64_t n = 1) { cases_ += n; }
  void tally(const std::string& name, std::uint64_t n = 1) {
    for (auto& [key, value] : tallies_) {
      if (key == name) {
        value += n;
        return;
      }
    }
    tallies_.emplace_back(name, n);
  }
  void fail(std::string what, std::string payload) {
    ++failures_;
    if (examples_.size() < max_examples_) examples_.push_back({std::move(what), std::move(payload)});
  }
  void skip() { skipped_ = true; }

  void merge_into(VerificationReport& r, std::size_t max_examples) const {
    r.cases_checked += cases_;
    r.failure_count += failures_;
    for (const auto& ex : examples_) {
      if (r.failures.size() < max_examples) r.failures.push_back(ex);
    }
    for (const auto& [name, value] : tallies_) {
      auto it = std::find_if(r.tallies.begin(), r.tallies.end(),
                             [&](const auto& t) { return t.first == name; });
      if (it == r.tallies.end()) {
        r.tallies.emplace_back(name, value);
      } else {
        it->second += value;
      }
    }
  }

  bool skipped() const { return skipped_; }

 private:
  std::size_t max_examples_;
  std::uint64_t cases_ = 0;
  std::uint64_t failures_ = 0;
  std::vector<Counterexample> examples_;
  std::vector<std::pair<std::string, std::uint64_t>> tallies_;
  bool skipped_ = false;
};

// Tracks which kinds of sub-check a report contains.
struct CoverageTracker {
  bool exhaustive = false;
  bool sampled = false;
  bool truncated = false;

  Coverage result() const {
    if (truncated) return Coverage::truncated;
    if (exhaustive && sampled) return Coverage::mixed;
    return sampled ? Coverage::sampled : Coverage::exhaustive;
  }
};

/// Splits [0, total) into chunks of `chunk` items and runs them in
/// parallel. Returns false if the deadline cut the sweep short.
bool sweep(VerificationReport& r, const CampaignOptions& opt, const Deadline& deadline,
           std::uint64_t total, std::uint64_t chunk,
           const std::function<void(std::uint64_t, std::uint64_t, Sink&)>& body) {
  if (total == 0) return true;
  const std::uint64_t chunks = (total + chunk - 1) / chunk;
  std::vector<Sink> sinks(chunks, Sink(opt.max_counterexamples));
  parallel_for(chunks, [&](std::size_t c) {
    if (deadline.expired()) {
      sinks[c].skip();
      return;
    }
    const std::uint64_t begin = c * chunk;
    body(begin, std::min(total, begin + chunk), sinks[c]);
  });
  bool complete = true;
  for (const Sink& s : sinks) {
    s.merge_into(r, opt.max_counterexamples);
    complete = complete && !s.skipped();
  }
  return complete;
}

template <class T>
std::string join_values(std::span<const T> values, const char* sep = "") {
  std::ostringstream os;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << sep;
    os << +values[i];
  }
  return os.str();
}

std::string bits(std::span<const std::uint8_t> v) { return join_values(v); }

std::string params_tag(int p, int k) {
  return "(p=" + std::to_string(p) + ",k=" + std::to_string(k) + ")";
}

VerificationReport new_report(std::string claim, int p, int k, const CampaignOptions& opt) {
  VerificationReport r;
  r.claim = std::move(claim);
  r.p = p;
  r.k = k;
  r.seed = opt.seed;
  r.trials = opt.trials;
  r.samples = opt.samples;
  return r;
}

void finish(VerificationReport& r, const CoverageTracker& cov, const Deadline& deadline) {
  r.coverage = cov.result();
  r.elapsed_seconds = deadline.elapsed();
}

// Fills one batch of lane words with consecutive two-sorted 0-1 inputs.
// Lane l holds input `first + l`; returns the mask of used lanes.
class TwoSortedPacker {
 public:
  explicit TwoSortedPacker(std::size_t registers)
      : inputs_(registers), half_(registers / 2), even_(half_ + 1), odd_(half_ + 1) {}

  LaneWord fill(std::uint64_t first, std::uint64_t count, std::vector<LaneWord>& words) {
    std::fill(even_.begin(), even_.end(), 0);
    std::fill(odd_.begin(), odd_.end(), 0);
    for (std::uint64_t l = 0; l < count; ++l) {
      // Track position t is 1 iff t >= half - ones.
      const auto [ea, ob] = inputs_.ones(first + l);
      even_[half_ - ea] |= LaneWord{1} << l;
      odd_[half_ - ob] |= LaneWord{1} << l;
    }
    LaneWord e = 0;
    LaneWord o = 0;
    for (std::size_t t = 0; t < half_; ++t) {
      e |= even_[t];
      o |= odd_[t];
      words[2 * t] = e;
      words[2 * t + 1] = o;
    }
    return count == kLanes ? ~LaneWord{0} : (LaneWord{1} << count) - 1;
  }

  const TwoSortedInputs& inputs() const { return inputs_; }

 private:
  TwoSortedInputs inputs_;
  std::size_t half_;
  std::vector<LaneWord> even_;
  std::vector<LaneWord> odd_;
};

std::size_t first_lane(LaneWord mask) { return static_cast<std::size_t>(std::countr_zero(mask)); }

// Register contents after each pass, for counterexample payloads.
std::string pass_trace(const Network& net, std::vector<std::uint8_t> input, std::size_t passes) {
  std::ostringstream os;
  os << "input=" << bits(input);
  std::span<std::uint8_t> regs(input);
  for (std::size_t pass = 1; pass <= passes; ++pass) {
    apply_network_in_place(net, regs);
    os << " pass" << pass << "=" << bits(input);
  }
  return os.str();
}

std::vector<std::int64_t> random_sorted(std::mt19937_64& rng, std::size_t len, std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> dist(0, hi);
  std::vector<std::int64_t> out(len);
  for (auto& v : out) v = dist(rng);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string to_string(Coverage c) {
  switch (c) {
    case Coverage::exhaustive:
      return "exhaustive";
    case Coverage::sampled:
      return "sampled";
    case Coverage::mixed:
      return "mixed";
    case Coverage::truncated:
      return "truncated";
  }
  return "?";
}

std::string report_to_json(const VerificationReport& r, bool include_timing) {
  nlohmann::ordered_json j;
  j["claim"] = r.claim;
  j["p"] = r.p;
  j["k"] = r.k;
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["samples"] = r.samples;
  j["coverage"] = to_string(r.coverage);
  j["cases_checked"] = r.cases_checked;
  auto tallies = nlohmann::ordered_json::object();
  for (const auto& [name, value] : r.tallies) tallies[name] = value;
  j["tallies"] = tallies;
  j["failure_count"] = r.failure_count;
  auto failures = nlohmann::ordered_json::array();
  for (const auto& f : r.failures) failures.push_back({{"what", f.what}, {"payload", f.payload}});
  j["failures"] = failures;
  j["passed"] = r.passed();
  if (include_timing) j["elapsed_seconds"] = r.elapsed_seconds;
  return j.dump();
}

std::string report_to_text(const VerificationReport& r) {
  std::ostringstream os;
  os << (r.passed() ? "PASS" : "FAIL") << ' ' << r.claim << ' ' << params_tag(r.p, r.k) << ' '
     << to_string(r.coverage) << " cases=" << r.cases_checked << " failures=" << r.failure_count;
  for (const auto& [name, value] : r.tallies) os << ' ' << name << '=' << value;
  os << '\n';
  for (const auto& f : r.failures) os << "  " << f.what << ": " << f.payload << '\n';
  return os.str();
}

std::vector<std::int64_t> oracle_merge(std::span<const std::int64_t> a,
                                       std::span<const std::int64_t> b) {
  if (!std::is_sorted(a.begin(), a.end()) || !std::is_sorted(b.begin(), b.end())) {
    throw PreconditionError("oracle_merge needs sorted inputs");
  }
  std::vector<std::int64_t> out(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), out.begin());
  return out;
}

TwoSortedInputs::TwoSortedInputs(std::size_t registers) : half_(registers / 2) {
  if (registers % 2 != 0) {
    throw PreconditionError("two-sorted inputs need an even length, got " +
                            std::to_string(registers));
  }
}

std::pair<std::size_t, std::size_t> TwoSortedInputs::ones(std::uint64_t index) const {
  if (index >= size()) throw PreconditionError("two-sorted input index out of range");
  return {static_cast<std::size_t>(index / (half_ + 1)),
          static_cast<std::size_t>(index % (half_ + 1))};
}

std::vector<std::uint8_t> TwoSortedInputs::at(std::uint64_t index) const {
  const auto [ea, ob] = ones(index);
  std::vector<std::uint8_t> out(registers(), 0);
  for (std::size_t t = half_ - ea; t < half_; ++t) out[2 * t] = 1;
  for (std::size_t t = half_ - ob; t < half_; ++t) out[2 * t + 1] = 1;
  return out;
}

std::vector<std::vector<std::uint8_t>> enumerate_two_sorted_01(std::size_t registers) {
  const TwoSortedInputs inputs(registers);
  std::vector<std::vector<std::uint8_t>> out;
  out.reserve(inputs.size());
  for (std::uint64_t i = 0; i < inputs.size(); ++i) out.push_back(inputs.at(i));
  return out;
}

VerificationReport verify_merger(int p, int k, const CampaignOptions& opt) {
  const NetworkParams prm = params(p, k);
  const Network m = build_m(prm);
  const auto passes = static_cast<std::size_t>(prm.merge_passes());
  const auto regs = static_cast<std::size_t>(prm.registers);
  const Deadline deadline(opt.budget_seconds);
  VerificationReport r = new_report("merger", p, k, opt);
  CoverageTracker cov;

  const TwoSortedInputs inputs(regs);
  const std::uint64_t total = inputs.size();
  constexpr std::uint64_t kBatchesPerChunk = 64;
  const bool complete = sweep(
      r, opt, deadline, total, kBatchesPerChunk * kLanes,
      [&](std::uint64_t begin, std::uint64_t end, Sink& sink) {
        TwoSortedPacker packer(regs);
        std::vector<LaneWord> words(regs);
        for (std::uint64_t first = begin; first < end; first += kLanes) {
          const std::uint64_t count = std::min<std::uint64_t>(kLanes, end - first);
          const LaneWord used = packer.fill(first, count, words);
          for (std::size_t pass = 0; pass < passes; ++pass) apply_network_packed(m, words);
          LaneWord bad = unsorted_lanes(words) & used;
          sink.checked(count);
          sink.tally("zero_one_inputs", count);
          while (bad) {
            const std::size_t lane = first_lane(bad);
            bad &= bad - 1;
            sink.fail("unsorted after " + std::to_string(passes) + " passes",
                      pass_trace(m, inputs.at(first + lane), passes));
          }
        }
      });
  cov.exhaustive = true;
  cov.truncated = !complete;
  if (complete) {
    std::uint64_t counted = 0;
    for (const auto& [name, value] : r.tallies) {
      if (name == "zero_one_inputs") counted = value;
    }
    if (counted != total) {
      ++r.failure_count;
      r.failures.push_back({"zero-one coverage", "checked " + std::to_string(counted) + " of " +
                                                     std::to_string(total) + " inputs"});
    }
  }

  // Integer spot checks against the reference merge.
  const std::uint64_t spot = std::min<std::uint64_t>(opt.trials, 100);
  const bool spot_complete = sweep(
      r, opt, deadline, spot, 16, [&](std::uint64_t begin, std::uint64_t end, Sink& sink) {
        for (std::uint64_t t = begin; t < end; ++t) {
          auto rng = substream(opt.seed, t);
          const auto a = random_sorted(rng, regs / 2, static_cast<std::int64_t>(regs));
          const auto b = random_sorted(rng, regs / 2, static_cast<std::int64_t>(regs));
          const auto trace = run_periodic(m, interleave<std::int64_t>(a, b),
                                          RunOptions{.max_passes = passes});
          sink.checked();
          sink.tally("integer_spot_checks");
          if (trace.final_values != oracle_merge(a, b)) {
            sink.fail("integer merge differs from reference",
                      "trial=" + std::to_string(t) + " a=" + join_values<std::int64_t>(a, ",") +
                          " b=" + join_values<std::int64_t>(b, ","));
          }
        }
      });
  cov.sampled = spot > 0;
  cov.truncated = cov.truncated || !spot_complete;
  finish(r, cov, deadline);
  return r;
}

VerificationReport verify_cw(int k, const CampaignOptions& opt) {
  if (k < 1 || k > kMaxExponent) {
    throw ParameterError("cw needs 1 <= k <= " + std::to_string(kMaxExponent) + ", got " +
                         std::to_string(k));
  }
  const Network cw = build_cw(k);
  const std::size_t regs = cw.register_count();
  const Deadline deadline(opt.budget_seconds);
  VerificationReport r = new_report("cw", 0, k, opt);
  CoverageTracker cov;

  // (i) one pass merges every two-sorted 0-1 input.
  const TwoSortedInputs inputs(regs);
  bool complete = sweep(
      r, opt, deadline, inputs.size(), 64 * kLanes,
      [&](std::uint64_t begin, std::uint64_t end, Sink& sink) {
        TwoSortedPacker packer(regs);
        std::vector<LaneWord> words(regs);
        for (std::uint64_t first = begin; first < end; first += kLanes) {
          const std::uint64_t count = std::min<std::uint64_t>(kLanes, end - first);
          const LaneWord used = packer.fill(first, count, words);
          apply_network_packed(cw, words);
          LaneWord bad = unsorted_lanes(words) & used;
          sink.checked(count);
          sink.tally("merge_inputs", count);
          while (bad) {
            const std::size_t lane = first_lane(bad);
            bad &= bad - 1;
            sink.fail("one pass does not merge", pass_trace(cw, inputs.at(first + lane), 1));
          }
        }
      });
  cov.exhaustive = true;

  // (ii) k passes sort.
  const auto passes = static_cast<std::size_t>(k);
  if (regs <= 16) {
    const std::uint64_t total = std::uint64_t{1} << regs;
    complete = sweep(r, opt, deadline, total, 64 * kLanes,
                     [&](std::uint64_t begin, std::uint64_t end, Sink& sink) {
                       std::vector<LaneWord> words(regs);
                       for (std::uint64_t first = begin; first < end; first += kLanes) {
                         const std::uint64_t count = std::min<std::uint64_t>(kLanes, end - first);
                         std::fill(words.begin(), words.end(), 0);
                         for (std::uint64_t l = 0; l < count; ++l) {
                           for (std::size_t q = 0; q < regs; ++q) {
                             words[q] |= (((first + l) >> q) & 1U) << l;
                           }
                         }
                         const LaneWord used =
                             count == kLanes ? ~LaneWord{0} : (LaneWord{1} << count) - 1;
                         for (std::size_t pass = 0; pass < passes; ++pass) {
                           apply_network_packed(cw, words);
                         }
                         LaneWord bad = unsorted_lanes(words) & used;
                         sink.checked(count);
                         sink.tally("sort_inputs", count);
                         while (bad) {
                           const std::size_t lane = first_lane(bad);
                           bad &= bad - 1;
                           std::vector<std::uint8_t> input(regs);
                           for (std::size_t q = 0; q < regs; ++q) {
                             input[q] = static_cast<std::uint8_t>(((first + lane) >> q) & 1U);
                           }
                           sink.fail("k passes do not sort", pass_trace(cw, input, passes));
                         }
                       }
                     }) &&
               complete;
  } else {
    cov.sampled = true;
    complete = sweep(r, opt, deadline, opt.samples, 256,
                     [&](std::uint64_t begin, std::uint64_t end, Sink& sink) {
                       std::vector<std::int64_t> values(regs);
                       for (std::uint64_t t = begin; t < end; ++t) {
                         auto rng = substream(opt.seed, t);
                         std::iota(values.begin(), values.end(), 0);
                         std::shuffle(values.begin(), values.end(), rng);
                         const auto trace =
                             run_periodic(cw, values, RunOptions{.max_passes = passes});
                         sink.checked();
                         sink.tally("sort_permutations");
                         if (!std::is_sorted(trace.final_values.begin(),
                                             trace.final_values.end())) {
                           sink.fail("k passes do not sort",
                                     "trial=" + std::to_string(t) + " input=" +
                                         join_values<std::int64_t>(values, ","));
                         }
                       }
                     }) &&
               complete;
  }
  cov.truncated = !complete;
  finish(r, cov, deadline);
  return r;
}

VerificationReport verify_column_equivalence(int p, int k, const CampaignOptions& opt) {
  const NetworkParams prm = params(p, k);
  const Network m = build_m(prm);
  const ColumnDynamics dyn(prm);
  const Deadline deadline(opt.budget_seconds);
  VerificationReport r = new_report("columns", p, k, opt);
  CoverageTracker cov;

  const auto b = static_cast<std::size_t>(prm.columns);
  const std::int64_t n = prm.column_height;
  const auto passes = prm.merge_passes();

  auto check = [&](ColumnState c, const std::string& origin, Sink& sink) {
    auto regs = matrix_from_counts(prm, c);
    sink.checked();
    for (std::int64_t pass = 1; pass <= passes; ++pass) {
      for (int x = 1; x <= p; ++x) {
        apply_stage_in_place(m.stage(static_cast<std::size_t>(x - 1)), std::span(regs));
        const ColumnState want = dyn.q_stage(x, c);
        const auto got = column_counts(prm, regs);
        if (!got || *got != want) {
          std::string where = "pass " + std::to_string(pass) + " stage " + std::to_string(x);
          std::string detail = origin + " before=" + to_string(c) + " expected=" + to_string(want);
          if (!got) {
            detail += " registers leave a column unsorted";
          } else {
            for (std::size_t t = 1; t <= b; ++t) {
              if (got->at(t) != want.at(t)) {
                detail += " column=" + std::to_string(t) + " got=" + to_string(*got);
                break;
              }
            }
          }
          sink.fail("column model mismatch at " + where, detail);
          return;
        }
        c = want;
      }
    }
  };

  // Every state, when the space is small.
  std::uint64_t space = 1;
  for (std::size_t t = 0; t < b && space <= opt.exhaustive_limit; ++t) {
    space *= static_cast<std::uint64_t>(n + 1);
  }
  bool complete = true;
  if (space <= opt.exhaustive_limit / 10) {
    cov.exhaustive = true;
    complete = sweep(r, opt, deadline, space, 512,
                     [&](std::uint64_t begin, std::uint64_t end, Sink& sink) {
                       for (std::uint64_t idx = begin; idx < end; ++idx) {
                         std::vector<std::int64_t> counts(b);
                         std::uint64_t rest = idx;
                         for (auto& v : counts) {
                           v = static_cast<std::int64_t>(rest % static_cast<std::uint64_t>(n + 1));
                           rest /= static_cast<std::uint64_t>(n + 1);
                         }
                         sink.tally("all_states");
                         check(ColumnState{std::move(counts)}, "state#" + std::to_string(idx),
                               sink);
                       }
                     });
  }

  cov.sampled = opt.trials > 0;
  complete = sweep(r, opt, deadline, opt.trials, 256,
                   [&](std::uint64_t begin, std::uint64_t end, Sink& sink) {
                     std::uniform_int_distribution<std::int64_t> dist(0, n);
                     for (std::uint64_t t = begin; t < end; ++t) {
                       auto rng = substream(opt.seed, t);
                       std::vector<std::int64_t> counts(b);
                       for (auto& v : counts) v = dist(rng);
                       sink.tally("random_states");
                       check(ColumnState{std::move(counts)}, "trial=" + std::to_string(t), sink);
                     }
                   }) &&
             complete;
  cov.truncated = !complete;
  finish(r, cov, deadline);
  return r;
}

VerificationReport verify_interval_inclusions(int k) {
  if (k < 3 || k > kMaxExponent) {
    throw ParameterError("interval checks need 3 <= k <= " + std::to_string(kMaxExponent));
  }
  const Deadline deadline(0);
  VerificationReport r = new_report("intervals", 0, k, CampaignOptions{.trials = 0, .samples = 0});
  Sink sink(CampaignOptions{}.max_counterexamples);

  using D = IntervalDescriptor;
  const auto iv = [k](D w) { return interval_of(w, k); };
  const auto name = [k](D w) { return "I(" + to_string(w, k) + ")"; };

  auto unary = [&](const std::string& fn, const std::function<Half(Half)>& f, D from, D to) {
    for (Half x : half_grid(iv(from))) {
      sink.checked();
      sink.tally("interval_points");
      if (!iv(to).contains(f(x))) {
        sink.fail(fn + "(" + name(from) + ") not in " + name(to),
                  "x=" + to_string(x) + " image=" + to_string(f(x)));
      }
    }
  };
  auto minmax = [&](D xa, D ya, D xb, D yb) {
    for (Half x : half_grid(iv(xa))) {
      for (Half y : half_grid(iv(ya))) {
        sink.checked();
        sink.tally("interval_points");
        const auto [lo, hi] = reduced_minmax(x, y);
        if (!iv(xb).contains(lo) || !iv(yb).contains(hi)) {
          sink.fail("MinMax(" + name(xa) + "," + name(ya) + ") not in (" + name(xb) + "," +
                        name(yb) + ")",
                    "x=" + to_string(x) + " y=" + to_string(y));
        }
      }
    }
  };

  // Dec_i maps I(i+1) into I(i) and fixes I(0), I(-k), I(+-k). Dec_0 is
  // included: the last column step of a run uses it.
  for (int i = 0; i <= k - 2; ++i) {
    const auto dec = [i](Half x) { return reduced_dec(i, x); };
    const std::string fn = "Dec_" + std::to_string(i);
    unary(fn, dec, D::at_level(i + 1), D::at_level(i));
    for (D w : {D::at_level(0), D::minus_k(), D::plus_minus_k()}) unary(fn, dec, w, w);
  }
  unary("Cyc", reduced_cyc, D::minus_k(), D::at_level(k - 1));
  for (D w : {D::at_level(0), D::at_level(k - 1)}) unary("Cyc", reduced_cyc, w, w);
  unary("Min", reduced_min, D::plus_minus_k(), D::minus_k());
  unary("Min", reduced_min, D::at_level(1), D::at_level(0));
  minmax(D::plus_minus_k(), D::minus_k(), D::minus_k(), D::plus_minus_k());
  for (int i = 1; i <= k - 1; ++i) {
    for (D w : {D::at_level(0), D::minus_k()}) minmax(D::at_level(i), w, w, D::at_level(i));
  }

  sink.merge_into(r, CampaignOptions{}.max_counterexamples);
  finish(r, CoverageTracker{.exhaustive = true}, deadline);
  return r;
}

VerificationReport verify_column_theorems(int p, int k, const CampaignOptions& opt) {
  const NetworkParams prm = params(p, k);
  const ColumnDynamics dyn(prm);
  const StateSequences seqs(prm);
  const TwoFlatEnumeration flats(prm);
  const Deadline deadline(opt.budget_seconds);
  VerificationReport r = new_report("theorems", p, k, opt);
  CoverageTracker cov;

  const auto b = static_cast<std::size_t>(prm.columns);
  const std::int64_t general_steps = prm.merge_stages();
  const std::int64_t balanced_steps = seqs.last_index();

  auto check_general = [&](const ColumnState& c, const std::string& origin, Sink& sink) {
    sink.tally("two_flat_states");
    const ColumnState out = dyn.run(c, general_steps);
    if (!is_flat(out)) {
      sink.tally("flatness_failures");
      sink.fail("not flat after " + std::to_string(general_steps) + " steps",
                origin + " state=" + to_string(c) + " final=" + to_string(out));
    }
  };

  auto check_balanced = [&](const ColumnState& c, const std::string& origin, Sink& sink) {
    sink.tally("balanced_states");
    ColumnState cur = c;
    ReducedState d = reduce(c);
    bool contained_so_far = true;
    for (std::int64_t i = 1; i <= balanced_steps; ++i) {
      const int x = dyn.stage_of_step(i);
      cur = dyn.q_stage(x, cur);
      d = dyn.reduced_q_stage(x, d);
      if (!is_balanced(cur) || reduce(cur) != d) {
        sink.fail("reduced run diverges at step " + std::to_string(i),
                  origin + " state=" + to_string(c) + " column=" + to_string(cur) +
                      " reduced=" + to_string(d));
        return;
      }
      const DescriptorSequence xi = seqs.x(i);
      if (contained_so_far && !contained(d, xi, k)) {
        // Reported once per state; the terminal check below still runs.
        contained_so_far = false;
        sink.tally("containment_failures");
        sink.fail("reduced state outside X_" + std::to_string(i),
                  origin + " state=" + to_string(c) + " reduced=" + to_string(d) +
                      " X=" + to_string(xi, k));
      }
    }
    const std::int64_t s = d.height;
    std::vector<std::int64_t> want(b, s / 2);
    if (s % 2 != 0) std::fill(want.begin() + static_cast<std::ptrdiff_t>(b / 2), want.end(), s / 2 + 1);
    if (cur.counts != want) {
      sink.tally("terminal_failures");
      sink.fail("balanced state not at its terminal value after " +
                    std::to_string(balanced_steps) + " steps",
                origin + " state=" + to_string(c) + " final=" + to_string(cur) +
                    " expected=" + to_string(ColumnState{want}));
    }
  };

  auto check_sandwich = [&](const ColumnState& c, const std::string& origin, Sink& sink) {
    sink.tally("unbalanced_states");
    StateBounds bd = bounds(c);
    const auto le = [](const ColumnState& a, const ColumnState& z) {
      for (std::size_t t = 0; t < a.size(); ++t) {
        if (a.counts[t] > z.counts[t]) return false;
      }
      return true;
    };
    if (!is_balanced(bd.lower) || !is_balanced(bd.upper) ||
        height(bd.upper) != height(bd.lower) + 1) {
      sink.fail("bounds not balanced with height gap 1",
                origin + " state=" + to_string(c) + " lower=" + to_string(bd.lower) +
                    " upper=" + to_string(bd.upper));
      return;
    }
    ColumnState cur = c;
    for (std::int64_t i = 0; i <= general_steps; ++i) {
      if (i > 0) {
        const int x = dyn.stage_of_step(i);
        cur = dyn.q_stage(x, cur);
        bd.lower = dyn.q_stage(x, bd.lower);
        bd.upper = dyn.q_stage(x, bd.upper);
      }
      if (!le(bd.lower, cur) || !le(cur, bd.upper)) {
        sink.fail("state leaves its bounds at step " + std::to_string(i),
                  origin + " state=" + to_string(c) + " lower=" + to_string(bd.lower) +
                      " current=" + to_string(cur) + " upper=" + to_string(bd.upper));
        return;
      }
    }
  };

  auto check_state = [&](const ColumnState& c, const std::string& origin, Sink& sink) {
    sink.checked();
    check_general(c, origin, sink);
    if (is_balanced(c)) {
      check_balanced(c, origin, sink);
    } else {
      check_sandwich(c, origin, sink);
    }
  };

  bool complete = true;
  if (flats.size() <= opt.exhaustive_limit) {
    cov.exhaustive = true;
    complete = sweep(r, opt, deadline, flats.size(), 1024,
                     [&](std::uint64_t begin, std::uint64_t end, Sink& sink) {
                       for (std::uint64_t idx = begin; idx < end; ++idx) {
                         check_state(flats.at(idx), "state#" + std::to_string(idx), sink);
                       }
                     });
  } else {
    cov.sampled = true;
    // Random 2-flat states are rarely balanced, so balanced ones are drawn
    // separately.
    complete = sweep(r, opt, deadline, opt.samples, 1024,
                     [&](std::uint64_t begin, std::uint64_t end, Sink& sink) {
                       for (std::uint64_t t = begin; t < end; ++t) {
                         auto rng = substream(opt.seed, t);
                         const std::string origin = "trial=" + std::to_string(t);
                         check_state(flats.random(rng), origin, sink);
                         check_state(flats.random_balanced(rng), origin, sink);
                       }
                     });
  }
  cov.truncated = !complete;

  const VerificationReport intervals = verify_interval_inclusions(k);
  r.cases_checked += intervals.cases_checked;
  r.failure_count += intervals.failure_count;
  for (const auto& t : intervals.tallies) r.tallies.push_back(t);
  for (const auto& f : intervals.failures) {
    if (r.failures.size() < opt.max_counterexamples) r.failures.push_back(f);
  }
  finish(r, cov, deadline);
  return r;
}

VerificationReport verify_structure(int p, int k) {
  const NetworkParams prm = params(p, k);
  const Network unpacked = build_p(prm);
  const Network m = build_m(prm);
  const Deadline deadline(0);
  VerificationReport r = new_report("structure", p, k, CampaignOptions{.trials = 0, .samples = 0});
  Sink sink(CampaignOptions{}.max_counterexamples);

  const std::int64_t n = prm.column_height;
  const std::int64_t b = prm.columns;
  const std::int64_t half = prm.half_columns();
  const std::int64_t depth = prm.depth;
  const auto expect = [&](bool ok, const std::string& what, const std::string& detail) {
    sink.checked();
    if (!ok) sink.fail(what, detail);
  };

  expect(delay(unpacked) == static_cast<std::size_t>(p), "delay of the unpacked network",
         "delay=" + std::to_string(delay(unpacked)) + " p=" + std::to_string(p));
  expect(unpacked.depth() == static_cast<std::size_t>(depth), "depth of the unpacked network",
         "depth=" + std::to_string(unpacked.depth()) + " expected=" + std::to_string(depth));
  expect(m.depth() == static_cast<std::size_t>(p) &&
             m.register_count() == static_cast<std::size_t>(prm.registers),
         "shape of M", "depth=" + std::to_string(m.depth()) +
                           " registers=" + std::to_string(m.register_count()));

  // Columns as 1-based register numbers of the unpacked network: column t
  // holds t, t+b, ..., t+(n-1)b. L_j is column j, R_j is column b-j+1.
  const auto column = [&](std::int64_t t) {
    std::vector<std::size_t> out;
    for (std::int64_t i = 0; i < n; ++i) out.push_back(static_cast<std::size_t>(t + i * b));
    return out;
  };
  const auto left = [&](std::int64_t j) { return column(j); };
  const auto right = [&](std::int64_t j) { return column(b - j + 1); };
  // S_{A,B,h} = { [a_i : b_{i+h}] : 1 <= i <= |A| - h }.
  const auto spread = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& bb,
                          std::int64_t h, std::vector<Comparator>& into) {
    for (std::size_t i = 0; i + static_cast<std::size_t>(h) < a.size(); ++i) {
      into.push_back({a[i], bb[i + static_cast<std::size_t>(h)]});
    }
  };

  std::vector<std::vector<Comparator>> want(static_cast<std::size_t>(depth));
  {
    // Stage 1: S_{R_1 - {N}, L_1 - {1}, 0} plus the guards [0:1] and [N:N+1].
    auto r1 = right(1);
    auto l1 = left(1);
    r1.pop_back();
    l1.erase(l1.begin());
    spread(r1, l1, 0, want[0]);
    const auto top = static_cast<std::size_t>(prm.registers);
    want[0].push_back({0, 1});
    want[0].push_back({top, top + 1});
  }
  for (std::int64_t j = 1; j <= half; ++j) {
    for (int s = 1; s <= k - 1; ++s) {
      if ((p - 2) * (j - 1) < s && s <= (p - 2) * j) {
        spread(left(j), right(j), prm.offset(s), want[static_cast<std::size_t>(j + s - 1)]);
      }
    }
  }
  for (std::int64_t j = 1; j <= std::min(prm.shift_count(), half - 1); ++j) {
    auto& st = want[static_cast<std::size_t>((p - 1) * j)];
    spread(left(j), left(j + 1), 0, st);
    spread(right(j + 1), right(j), 0, st);
  }
  std::vector<Comparator> last;
  spread(left(half), right(half), 0, last);
  std::sort(last.begin(), last.end());
  if (want.back().empty()) want.back() = last;

  for (std::int64_t i = 1; i <= depth; ++i) {
    auto& w = want[static_cast<std::size_t>(i - 1)];
    std::sort(w.begin(), w.end());
    const auto got = unpacked.stage(static_cast<std::size_t>(i - 1)).comparators();
    const bool same = std::equal(got.begin(), got.end(), w.begin(), w.end());
    std::string detail = "stage " + std::to_string(i);
    if (!same) {
      detail += " has " + std::to_string(got.size()) + " comparators, column form gives " +
                std::to_string(w.size());
      for (const Comparator& c : got) {
        if (!std::binary_search(w.begin(), w.end(), c)) {
          detail += "; unexpected " + to_string(c);
          break;
        }
      }
    }
    expect(same, "stage differs from its column form", detail);
  }
  {
    const auto got = unpacked.stage(static_cast<std::size_t>(depth - 1)).comparators();
    expect(std::equal(got.begin(), got.end(), last.begin(), last.end()),
           "last stage is not the middle column pair", "stage " + std::to_string(depth));
  }

  // A stage touching L_j or R_j lies in stages (p-1)(j-1)+1 .. min((p-1)j+1, D).
  for (std::int64_t j = 1; j <= half; ++j) {
    std::set<std::size_t> cols;
    for (auto v : left(j)) cols.insert(v);
    for (auto v : right(j)) cols.insert(v);
    const std::int64_t lo = (p - 1) * (j - 1) + 1;
    const std::int64_t hi = std::min<std::int64_t>((p - 1) * j + 1, depth);
    for (std::int64_t i = 1; i <= depth; ++i) {
      bool touches = false;
      for (const Comparator& c : unpacked.stage(static_cast<std::size_t>(i - 1)).comparators()) {
        touches = touches || cols.contains(c.lo) || cols.contains(c.hi);
      }
      expect(!touches || (lo <= i && i <= hi), "column pair used outside its window",
             "j=" + std::to_string(j) + " stage=" + std::to_string(i) + " window=" +
                 std::to_string(lo) + ".." + std::to_string(hi));
    }
  }

  // M holds every neighbour comparator [r:r+1].
  std::set<Comparator> all;
  for (const Stage& st : m.stages()) all.insert(st.comparators().begin(), st.comparators().end());
  std::size_t missing = 0;
  for (std::size_t q = 0; q + 1 < m.register_count(); ++q) missing += all.contains({q, q + 1}) ? 0 : 1;
  expect(missing == 0, "neighbour comparators missing from M",
         std::to_string(missing) + " missing");

  // Running time. The log form is evaluated in floating point; the integer
  // forms are exact.
  const std::int64_t steps = prm.merge_stages();
  const double log_n = std::log2(static_cast<double>(prm.registers));
  const double bound = 2.0 * p / (p - 2) * log_n + static_cast<double>(p) * (p - 8) / (p - 2);
  expect(static_cast<double>(steps) <= bound, "running-time bound",
         std::to_string(steps) + " > " + std::to_string(bound));
  if (p == 4) {
    expect(steps <= 4 * k - 8, "4-periodic bound 4k-8",
           std::to_string(steps) + " > " + std::to_string(4 * k - 8));
    expect(k % 2 == 0 || steps == 4 * k - 8, "4-periodic bound is tight for odd k",
           std::to_string(steps) + " != " + std::to_string(4 * k - 8));
    expect(4.0 * k - 8 <= 4.0 * log_n, "4k-8 <= 4 log N", std::to_string(4.0 * log_n));
  }
  if (p == 5) {
    expect(3.0 * static_cast<double>(steps) <= 10.0 * log_n, "5-periodic bound 10/3 log N",
           std::to_string(steps));
  }
  if (p == 6) {
    expect(static_cast<double>(steps) <= 3.0 * log_n - 3.0, "6-periodic bound 3 log N - 3",
           std::to_string(steps) + " > " + std::to_string(3.0 * log_n - 3.0));
  }

  sink.merge_into(r, CampaignOptions{}.max_counterexamples);
  finish(r, CoverageTracker{.exhaustive = true}, deadline);
  return r;
}

std::vector<VerificationReport> verify_all(int p, int k, const CampaignOptions& opt) {
  std::vector<VerificationReport> out;
  out.push_back(verify_merger(p, k, opt));
  out.push_back(verify_cw(k, opt));
  out.push_back(verify_column_equivalence(p, k, opt));
  out.push_back(verify_column_theorems(p, k, opt));
  out.push_back(verify_structure(p, k));
  return out;
}

}  // namespace pmerge
