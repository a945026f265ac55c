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

#include "pmerge/column_model.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace pmerge {

std::string to_string(Half h) {
  if (h.is_integer()) return std::to_string(h.twice() / 2);
  return std::to_string(h.twice()) + "/2";
}

std::string to_string(const ColumnState& c) {
  std::ostringstream os;
  os << '(';
  for (std::size_t t = 0; t < c.counts.size(); ++t) os << (t ? "," : "") << c.counts[t];
  os << ')';
  return os.str();
}

std::string to_string(const ReducedState& d) {
  std::ostringstream os;
  os << '(';
  for (std::size_t t = 0; t < d.values.size(); ++t) os << (t ? "," : "") << to_string(d.values[t]);
  os << ")@" << d.height;
  return os.str();
}

ColumnState make_column_state(const NetworkParams& prm, std::vector<std::int64_t> counts) {
  if (static_cast<std::int64_t>(counts.size()) != prm.columns) {
    throw PreconditionError("column state needs " + std::to_string(prm.columns) +
                            " entries, got " + std::to_string(counts.size()));
  }
  for (std::int64_t v : counts) {
    if (v < 0 || v > prm.column_height) {
      throw PreconditionError("column count " + std::to_string(v) + " outside [0, " +
                              std::to_string(prm.column_height) + "]");
    }
  }
  return ColumnState{std::move(counts)};
}

namespace {

void check_pair_index(const NetworkParams& prm, const ColumnState& c, int j) {
  if (static_cast<std::int64_t>(c.size()) != prm.columns) {
    throw PreconditionError("column state length " + std::to_string(c.size()) +
                            " does not match b=" + std::to_string(prm.columns));
  }
  if (j < 1 || j > prm.half_columns()) {
    throw PreconditionError("column pair index j=" + std::to_string(j) + " outside 1.." +
                            std::to_string(prm.half_columns()));
  }
}

}  // namespace

ColumnState cyc(const ColumnState& c) {
  if (c.size() < 2) throw PreconditionError("cyc needs at least two columns");
  ColumnState out = c;
  const std::size_t b = c.size();
  out.at(1) = std::max(c.at(1), c.at(b) - 1);
  out.at(b) = std::min(c.at(1) + 1, c.at(b));
  return out;
}

ColumnState dec(const NetworkParams& prm, const ColumnState& c, int j, int s) {
  check_pair_index(prm, c, j);
  if (s < 1 || s > prm.k - 1) {
    throw PreconditionError("dec index s=" + std::to_string(s) + " outside 1.." +
                            std::to_string(prm.k - 1));
  }
  const std::int64_t h = prm.offset(s);
  const std::size_t left = static_cast<std::size_t>(j);
  const std::size_t right = c.size() - left + 1;
  ColumnState out = c;
  out.at(left) = std::min(c.at(left), c.at(right) + h);
  out.at(right) = std::max(c.at(left) - h, c.at(right));
  return out;
}

ColumnState mov(const NetworkParams& prm, const ColumnState& c, int j) {
  check_pair_index(prm, c, j);
  const std::size_t b = c.size();
  const auto t = static_cast<std::size_t>(j);
  ColumnState out = c;
  out.at(t) = std::min(c.at(t), c.at(t + 1));
  out.at(t + 1) = std::max(c.at(t), c.at(t + 1));
  out.at(b - t) = std::min(c.at(b - t), c.at(b - t + 1));
  out.at(b - t + 1) = std::max(c.at(b - t), c.at(b - t + 1));
  return out;
}

bool is_flat(std::span<const std::int64_t> c) {
  if (c.empty()) return true;
  return std::is_sorted(c.begin(), c.end()) && c.back() <= c.front() + 1;
}

bool is_2flat(std::span<const std::int64_t> c) {
  std::vector<std::int64_t> odd, even;
  for (std::size_t t = 0; t < c.size(); ++t) (t % 2 == 0 ? odd : even).push_back(c[t]);
  return is_flat(odd) && is_flat(even);
}

bool is_balanced(std::span<const std::int64_t> c) {
  if (c.size() % 2 != 0) return false;
  if (c.empty()) return true;
  const std::int64_t s = c.front() + c.back();
  for (std::size_t t = 0; t < c.size() / 2; ++t) {
    if (c[t] + c[c.size() - 1 - t] != s) return false;
  }
  return true;
}

std::int64_t height(std::span<const std::int64_t> c) {
  if (c.empty() || !is_balanced(c)) throw PreconditionError("height of an unbalanced sequence");
  return c.front() + c.back();
}

ReducedState reduce(const ColumnState& c) {
  if (c.size() == 0 || !is_balanced(c)) {
    throw PreconditionError("reduce needs a balanced sequence, got " + to_string(c));
  }
  ReducedState d;
  d.height = height(c);
  for (std::size_t t = 0; t < c.size() / 2; ++t) {
    d.values.push_back(Half::from_twice(2 * c.counts[t] - d.height));
  }
  return d;
}

ColumnState ext(const ReducedState& d) {
  const std::size_t half = d.values.size();
  ColumnState c{std::vector<std::int64_t>(2 * half)};
  for (std::size_t t = 0; t < half; ++t) {
    const std::int64_t twice = d.values[t].twice() + d.height;
    if (twice % 2 != 0) {
      throw PreconditionError("reduced value " + to_string(d.values[t]) +
                              " does not match the parity of height " + std::to_string(d.height));
    }
    c.counts[t] = twice / 2;
    c.counts[2 * half - 1 - t] = d.height - twice / 2;
  }
  return c;
}

Half reduced_cyc(Half x) { return std::max(x, -x - Half::from_int(1)); }
Half reduced_min(Half x) { return std::min(x, -x); }
Half reduced_dec(int i, Half x) {
  if (i < 0) throw PreconditionError("Dec index must be non-negative");
  return std::min(x, -x + Half::from_int((std::int64_t{1} << i) - 1));
}
std::pair<Half, Half> reduced_minmax(Half x, Half y) { return {std::min(x, y), std::max(x, y)}; }

std::vector<std::size_t> ComponentFunction::args(std::int64_t columns) const {
  const auto b = static_cast<std::size_t>(columns);
  const auto t = static_cast<std::size_t>(j);
  switch (kind) {
    case Kind::cyc:
      return {1, b};
    case Kind::dec:
      return {t, b - t + 1};
    case Kind::mov:
      if (t == b - t) return {t, t + 1};
      return {t, t + 1, b - t, b - t + 1};
  }
  return {};
}

std::string to_string(const ComponentFunction& f) {
  switch (f.kind) {
    case ComponentFunction::Kind::cyc:
      return "cyc";
    case ComponentFunction::Kind::dec:
      return "dec(" + std::to_string(f.j) + "," + std::to_string(f.s) + ")";
    case ComponentFunction::Kind::mov:
      return "mov(" + std::to_string(f.j) + ")";
  }
  return "?";
}

ColumnDynamics::ColumnDynamics(const NetworkParams& prm) : params_(prm) {
  const int p = prm.p;
  const int k = prm.k;
  stages_.resize(static_cast<std::size_t>(p));
  for (int x = 1; x <= p; ++x) {
    auto& fs = stages_[static_cast<std::size_t>(x - 1)];
    if (x == 1) fs.push_back({ComponentFunction::Kind::cyc, 0, 0});
    for (int j = 1; j <= prm.shift_count(); ++j) {
      if ((x + j) % p == 1 % p) fs.push_back({ComponentFunction::Kind::mov, j, 0});
    }
    for (int j = 1; j <= prm.half_columns(); ++j) {
      const int r = (x + j) % p;
      if (r == 1 || r == 2) continue;
      const int s = (p - 2) * (j - 1) - 1 + (x + j - 1) % p;
      if (s >= 1 && s <= k - 1) fs.push_back({ComponentFunction::Kind::dec, j, s});
    }
    std::vector<std::size_t> seen;
    for (const ComponentFunction& f : fs) {
      for (std::size_t a : f.args(prm.columns)) {
        if (std::find(seen.begin(), seen.end(), a) != seen.end()) {
          throw ConstructionError("Q_" + std::to_string(x) + ": " + to_string(f) +
                                  " shares position " + std::to_string(a) +
                                  " with another member");
        }
        seen.push_back(a);
      }
    }
  }
}

const std::vector<ComponentFunction>& ColumnDynamics::stage_functions(int x) const {
  if (x < 1 || x > params_.p) {
    throw PreconditionError("stage map index x=" + std::to_string(x) + " outside 1.." +
                            std::to_string(params_.p));
  }
  return stages_[static_cast<std::size_t>(x - 1)];
}

ColumnState ColumnDynamics::apply(const ComponentFunction& f, const ColumnState& c) const {
  switch (f.kind) {
    case ComponentFunction::Kind::cyc:
      return cyc(c);
    case ComponentFunction::Kind::dec:
      return dec(params_, c, f.j, f.s);
    case ComponentFunction::Kind::mov:
      return mov(params_, c, f.j);
  }
  return c;
}

ColumnState ColumnDynamics::q_stage(int x, const ColumnState& c) const {
  if (static_cast<std::int64_t>(c.size()) != params_.columns) {
    throw PreconditionError("column state length " + std::to_string(c.size()) +
                            " does not match b=" + std::to_string(params_.columns));
  }
  ColumnState out = c;
  for (const ComponentFunction& f : stage_functions(x)) {
    const ColumnState partial = apply(f, c);
    for (std::size_t a : f.args(params_.columns)) out.at(a) = partial.at(a);
  }
  return out;
}

ReducedState ColumnDynamics::reduced_q_stage(int x, const ReducedState& d) const {
  const auto half = static_cast<std::size_t>(params_.half_columns());
  if (d.values.size() != half) {
    throw PreconditionError("reduced state length " + std::to_string(d.values.size()) +
                            " does not match b/2=" + std::to_string(half));
  }
  ReducedState out = d;
  auto& v = out.values;
  for (const ComponentFunction& f : stage_functions(x)) {
    const auto j = static_cast<std::size_t>(f.j);
    switch (f.kind) {
      case ComponentFunction::Kind::cyc:
        v[0] = reduced_cyc(d.values[0]);
        break;
      case ComponentFunction::Kind::dec:
        v[j - 1] = reduced_dec(params_.k - f.s - 1, d.values[j - 1]);
        break;
      case ComponentFunction::Kind::mov:
        if (j < half) {
          std::tie(v[j - 1], v[j]) = reduced_minmax(d.values[j - 1], d.values[j]);
        } else {
          v[j - 1] = reduced_min(d.values[j - 1]);
        }
        break;
    }
  }
  return out;
}

int ColumnDynamics::stage_of_step(std::int64_t step) const {
  if (step < 1) throw PreconditionError("steps are numbered from 1");
  return static_cast<int>((step - 1) % params_.p) + 1;
}

ColumnState ColumnDynamics::run(ColumnState c, std::int64_t steps) const {
  for (std::int64_t i = 1; i <= steps; ++i) c = q_stage(stage_of_step(i), c);
  return c;
}

std::vector<std::uint8_t> matrix_from_counts(const NetworkParams& prm, const ColumnState& c) {
  const ColumnState checked = make_column_state(prm, c.counts);
  const auto b = static_cast<std::size_t>(prm.columns);
  const auto n = static_cast<std::size_t>(prm.column_height);
  std::vector<std::uint8_t> regs(b * n, 0);
  for (std::size_t col = 0; col < b; ++col) {
    const auto ones = static_cast<std::size_t>(checked.counts[col]);
    for (std::size_t row = n - ones; row < n; ++row) regs[col + row * b] = 1;
  }
  return regs;
}

std::optional<ColumnState> column_counts(const NetworkParams& prm,
                                         std::span<const std::uint8_t> registers) {
  const auto b = static_cast<std::size_t>(prm.columns);
  const auto n = static_cast<std::size_t>(prm.column_height);
  if (registers.size() != b * n) {
    throw PreconditionError("register sequence of length " + std::to_string(registers.size()) +
                            " is not an " + std::to_string(n) + "x" + std::to_string(b) +
                            " matrix");
  }
  ColumnState c{std::vector<std::int64_t>(b, 0)};
  for (std::size_t col = 0; col < b; ++col) {
    std::uint8_t prev = 0;
    for (std::size_t row = 0; row < n; ++row) {
      const std::uint8_t v = registers[col + row * b];
      if (v < prev) return std::nullopt;
      prev = v;
      c.counts[col] += v;
    }
  }
  return c;
}

StateBounds bounds(const ColumnState& c) {
  const std::size_t b = c.size();
  if (b < 2 || b % 2 != 0 || !is_2flat(c)) {
    throw PreconditionError("bounds need a 2-flat state, got " + to_string(c));
  }
  if (is_balanced(c)) {
    throw PreconditionError("bounds need an unbalanced state, got " + to_string(c));
  }
  const std::size_t half = b / 2;
  // Step position of the odd track, counted from the left ...
  std::size_t i = half;
  for (std::size_t a = 1; a < half; ++a) {
    if (c.at(2 * a - 1) < c.at(2 * a + 1)) {
      i = a;
      break;
    }
  }
  // ... and of the even track, counted from the right.
  std::size_t j = half;
  for (std::size_t a = 1; a < half; ++a) {
    if (c.at(b - 2 * a) < c.at(b - 2 * a + 2)) {
      j = a;
      break;
    }
  }
  StateBounds out{c, c};
  for (std::size_t l = 1; l <= b; ++l) {
    const bool odd = l % 2 == 1;
    if (i < j) {
      if (odd) {
        out.lower.at(l) = l <= 2 * j - 1 ? c.at(1) : c.at(b - 1);
        out.upper.at(l) = c.at(b - 1);
      } else {
        out.lower.at(l) = c.at(l);
        out.upper.at(l) = c.at(b);
      }
    } else {
      if (odd) {
        out.lower.at(l) = c.at(1);
        out.upper.at(l) = c.at(l);
      } else {
        out.lower.at(l) = c.at(2);
        out.upper.at(l) = l <= b - 2 * i ? c.at(2) : c.at(b);
      }
    }
  }
  return out;
}

TwoFlatEnumeration::TwoFlatEnumeration(const NetworkParams& prm)
    : params_(prm),
      track_count_(static_cast<std::uint64_t>(prm.column_height * prm.half_columns() + 1)) {}

std::vector<std::int64_t> TwoFlatEnumeration::track(std::uint64_t t) const {
  const auto half = static_cast<std::uint64_t>(params_.half_columns());
  if (t + 1 == track_count_) return std::vector<std::int64_t>(half, params_.column_height);
  const auto base = static_cast<std::int64_t>(t / half);
  const std::uint64_t low = t % half + 1;
  std::vector<std::int64_t> out(half, base + 1);
  std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(low), base);
  return out;
}

ColumnState TwoFlatEnumeration::at(std::uint64_t index) const {
  if (index >= size()) throw PreconditionError("2-flat enumeration index out of range");
  const auto odd = track(index / track_count_);
  const auto even = track(index % track_count_);
  ColumnState c{std::vector<std::int64_t>(2 * odd.size())};
  for (std::size_t a = 0; a < odd.size(); ++a) {
    c.counts[2 * a] = odd[a];
    c.counts[2 * a + 1] = even[a];
  }
  return c;
}

ColumnState TwoFlatEnumeration::random(std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::uint64_t> pick(0, size() - 1);
  return at(pick(rng));
}

ColumnState TwoFlatEnumeration::random_balanced(std::mt19937_64& rng) const {
  const auto half = static_cast<std::size_t>(params_.half_columns());
  const std::size_t b = 2 * half;
  std::uniform_int_distribution<std::uint64_t> pick_track(0, track_count_ - 1);
  const auto odd = track(pick_track(rng));
  const std::int64_t base = odd.front();
  const bool stepped = odd.back() != base;
  std::uniform_int_distribution<std::int64_t> pick_height(base + (stepped ? 1 : 0),
                                                          base + params_.column_height);
  const std::int64_t s = pick_height(rng);
  ColumnState c{std::vector<std::int64_t>(b)};
  for (std::size_t a = 1; a <= half; ++a) {
    c.at(2 * a - 1) = odd[a - 1];
    c.at(b - 2 * a + 2) = s - odd[a - 1];
  }
  return c;
}

}  // namespace pmerge
