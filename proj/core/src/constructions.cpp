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

#include "pmerge/constructions.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace pmerge {

namespace {

std::int64_t pow2(int e) { return std::int64_t{1} << e; }

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

// Accumulates the comparators of one stage and reports the first collision
// together with the formula coordinates that produced it.
class StageAssembler {
 public:
  explicit StageAssembler(std::size_t registers) : used_(registers, false) {}

  void add(std::int64_t lo, std::int64_t hi, const std::string& origin) {
    if (lo < 0 || hi <= lo || hi >= static_cast<std::int64_t>(used_.size())) {
      throw ConstructionError("comparator [" + std::to_string(lo) + ":" + std::to_string(hi) +
                              "] from " + origin + " is not a standard comparator of the network");
    }
    const auto a = static_cast<std::size_t>(lo);
    const auto b = static_cast<std::size_t>(hi);
    if (used_[a] || used_[b]) {
      throw ConstructionError("comparator [" + std::to_string(lo) + ":" + std::to_string(hi) +
                              "] from " + origin + " collides with an earlier comparator");
    }
    used_[a] = used_[b] = true;
    comps_.push_back({a, b});
  }

  Stage finish() { return Stage(std::move(comps_)); }

 private:
  std::vector<bool> used_;
  std::vector<Comparator> comps_;
};

std::string coords(std::int64_t j, std::int64_t s, std::int64_t i) {
  return "(j=" + std::to_string(j) + ", s=" + std::to_string(s) + ", i=" + std::to_string(i) + ")";
}

}  // namespace

std::int64_t NetworkParams::offset(int s) const {
  if (s < 1 || s > k - 1) {
    throw ParameterError("offset index s=" + std::to_string(s) + " outside 1.." +
                         std::to_string(k - 1));
  }
  return pow2(k - s - 1) - 1;
}

std::int64_t NetworkParams::shift_count() const { return (k - 2) / (p - 2); }

NetworkParams params(int p, int k, bool allow_p3) {
  const int min_p = allow_p3 ? 3 : 4;
  if (p < min_p) {
    throw ParameterError("period p=" + std::to_string(p) + " must be at least " +
                         std::to_string(min_p));
  }
  if (k < p) {
    throw ParameterError("k=" + std::to_string(k) + " must satisfy k >= p=" + std::to_string(p));
  }
  if (k > kMaxExponent) {
    throw ParameterError("k=" + std::to_string(k) + " exceeds the supported maximum " +
                         std::to_string(kMaxExponent));
  }
  NetworkParams prm;
  prm.p = p;
  prm.k = k;
  prm.column_height = pow2(k - 1) - 1;
  prm.columns = 2 * ceil_div(k - 2, p - 2);
  prm.registers = prm.column_height * prm.columns;
  prm.depth = k - 1 + prm.columns / 2;
  return prm;
}

Network build_cw(int k) {
  if (k < 1 || k > kMaxExponent) {
    throw ParameterError("CW exponent k=" + std::to_string(k) + " outside 1.." +
                         std::to_string(kMaxExponent));
  }
  const std::int64_t registers = pow2(k);
  std::vector<Stage> stages;
  {
    StageAssembler st(static_cast<std::size_t>(registers));
    for (std::int64_t i = 0; i <= pow2(k - 1) - 1; ++i) {
      st.add(2 * i, 2 * i + 1, "CW stage 1, i=" + std::to_string(i));
    }
    stages.push_back(st.finish());
  }
  for (int j = 1; j <= k - 1; ++j) {
    StageAssembler st(static_cast<std::size_t>(registers));
    for (std::int64_t i = 0; i <= pow2(k - 1) - pow2(k - j - 1) - 1; ++i) {
      st.add(2 * i + 1, 2 * i + pow2(k - j),
             "CW stage " + std::to_string(j + 1) + ", i=" + std::to_string(i));
    }
    stages.push_back(st.finish());
  }
  return Network(static_cast<std::size_t>(registers), std::move(stages));
}

Network build_p(const NetworkParams& prm) {
  const std::int64_t n = prm.column_height;
  const std::int64_t b = prm.columns;
  const std::int64_t big_n = prm.registers;
  const auto total = static_cast<std::size_t>(big_n + 2);
  const int p = prm.p;
  const int k = prm.k;

  std::vector<StageAssembler> stages(static_cast<std::size_t>(prm.depth), StageAssembler(total));
  auto at = [&](std::int64_t index) -> StageAssembler& {
    if (index < 1 || index > prm.depth) {
      throw ConstructionError("stage index " + std::to_string(index) + " outside 1.." +
                              std::to_string(prm.depth));
    }
    return stages[static_cast<std::size_t>(index - 1)];
  };

  // Stage 1: wrap-around shorts between the last and first column, plus the
  // two boundary comparators on the extra registers 0 and N+1.
  at(1).add(0, 1, "boundary [0:1]");
  for (std::int64_t i = 1; i <= n - 1; ++i) {
    at(1).add(b * i, b * i + 1, "stage 1 short, i=" + std::to_string(i));
  }
  at(1).add(big_n, big_n + 1, "boundary [N:N+1]");

  // Long comparators between columns j and b-j+1, row offset h_s.
  for (std::int64_t j = 1; j <= b / 2; ++j) {
    const std::int64_t s_hi = std::min<std::int64_t>((p - 2) * j, k - 1);
    for (std::int64_t s = (p - 2) * (j - 1) + 1; s <= s_hi; ++s) {
      const std::int64_t reach = pow2(static_cast<int>(k - s - 1));
      for (std::int64_t i = 0; i <= n - reach; ++i) {
        at(j + s).add(b * i + j, b * (i + reach - 1) + (b - j + 1), "long " + coords(j, s, i));
      }
    }
  }

  // Shift stages between neighbouring columns. For j = b/2 both comparators
  // of a row coincide, so the second one is emitted only when distinct.
  for (std::int64_t j = 1; j <= prm.shift_count(); ++j) {
    const std::int64_t index = (p - 1) * j + 1;
    if (index > prm.depth) break;
    for (std::int64_t i = 0; i <= n - 1; ++i) {
      at(index).add(b * i + j, b * i + j + 1, "shift " + coords(j, 0, i));
      if (b - j != j) {
        at(index).add(b * i + (b - j), b * i + (b - j + 1), "shift " + coords(j, 0, i));
      }
    }
  }

  std::vector<Stage> built;
  built.reserve(stages.size());
  for (StageAssembler& st : stages) built.push_back(st.finish());
  return Network(total, std::move(built));
}

Network build_m(const NetworkParams& prm) {
  const Network unpacked = build_p(prm);
  const std::array<std::size_t, 2> boundary{0, unpacked.register_count() - 1};
  Network m = compact_form(restrict_registers(unpacked, boundary));
  if (m.depth() != static_cast<std::size_t>(prm.p)) {
    throw ConstructionError("compact form has " + std::to_string(m.depth()) +
                            " stages, expected p=" + std::to_string(prm.p));
  }
  return m;
}

}  // namespace pmerge
