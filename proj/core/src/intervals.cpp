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

#include "pmerge/intervals.hpp"

#include <algorithm>
#include <sstream>

namespace pmerge {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

std::int64_t h_minus_one(int i) { return (std::int64_t{1} << i) - 1; }

}  // namespace

std::string to_string(const IntervalDescriptor& w, int k) {
  switch (w.kind) {
    case IntervalDescriptor::Kind::level:
      return std::to_string(w.level);
    case IntervalDescriptor::Kind::minus_k:
      return "-" + std::to_string(k);
    case IntervalDescriptor::Kind::plus_minus_k:
      return "+-" + std::to_string(k);
  }
  return "?";
}

ClosedInterval interval_of(const IntervalDescriptor& w, int k) {
  const std::int64_t top = h_minus_one(k - 1);
  switch (w.kind) {
    case IntervalDescriptor::Kind::level:
      if (w.level < 0 || w.level > k - 1) {
        throw PreconditionError("interval level " + std::to_string(w.level) + " outside 0.." +
                                std::to_string(k - 1));
      }
      if (w.level == 0) return {Half::from_twice(-1), Half::from_int(0)};
      return {Half::from_twice(-1), Half::from_twice(h_minus_one(w.level))};
    case IntervalDescriptor::Kind::minus_k:
      return {Half::from_twice(-top), Half::from_int(0)};
    case IntervalDescriptor::Kind::plus_minus_k:
      return {Half::from_twice(-top), Half::from_twice(top)};
  }
  return {};
}

std::vector<Half> half_grid(const ClosedInterval& iv) {
  std::vector<Half> out;
  for (std::int64_t t = iv.lo.twice(); t <= iv.hi.twice(); ++t) out.push_back(Half::from_twice(t));
  return out;
}

std::string to_string(const DescriptorSequence& seq, int k) {
  std::ostringstream os;
  os << '(';
  for (std::size_t l = 0; l < seq.size(); ++l) os << (l ? "," : "") << to_string(seq[l], k);
  os << ')';
  return os.str();
}

bool contained(const ReducedState& d, const DescriptorSequence& seq, int k) {
  if (d.values.size() != seq.size()) return false;
  for (std::size_t l = 0; l < seq.size(); ++l) {
    if (!interval_of(seq[l], k).contains(d.values[l])) return false;
  }
  return true;
}

StateSequences::StateSequences(const NetworkParams& prm) : params_(prm) {}

int StateSequences::e(int x, int l) const {
  const int p = params_.p;
  const int k = params_.k;
  return std::max(0, k - (p - 2) * (l - 1) - (x + l - 1) % p);
}

bool StateSequences::moving_left(int x, int l) const { return (x + l) % params_.p == 1 % params_.p; }

DescriptorSequence StateSequences::u(int x) const {
  DescriptorSequence out;
  for (int l = 1; l <= params_.half_columns(); ++l) {
    out.push_back(moving_left(x, l) ? IntervalDescriptor::minus_k()
                                    : IntervalDescriptor::plus_minus_k());
  }
  return out;
}

DescriptorSequence StateSequences::v(int x) const {
  DescriptorSequence out;
  for (int l = 1; l <= params_.half_columns(); ++l) {
    out.push_back(moving_left(x, l) ? IntervalDescriptor::minus_k()
                                    : IntervalDescriptor::at_level(e(x, l)));
  }
  return out;
}

DescriptorSequence StateSequences::w(int x) const {
  DescriptorSequence out;
  for (int l = 1; l <= params_.half_columns(); ++l) {
    out.push_back(IntervalDescriptor::at_level(moving_left(x, l) ? 0 : e(x, l)));
  }
  return out;
}

DescriptorSequence StateSequences::z() const {
  return DescriptorSequence(static_cast<std::size_t>(params_.half_columns()),
                            IntervalDescriptor::at_level(0));
}

DescriptorSequence StateSequences::join(std::int64_t count, const DescriptorSequence& a,
                                        const DescriptorSequence& b) const {
  const std::int64_t half = params_.half_columns();
  if (count < 0 || count > half) {
    throw PreconditionError("join length " + std::to_string(count) + " outside 0.." +
                            std::to_string(half));
  }
  DescriptorSequence out(b.begin(), b.begin() + half);
  std::copy(a.begin(), a.begin() + count, out.begin());
  return out;
}

DescriptorSequence StateSequences::x(std::int64_t i) const {
  const std::int64_t p = params_.p;
  const std::int64_t half = params_.half_columns();
  if (i < 1 || i > last_index()) {
    throw PreconditionError("state sequence index " + std::to_string(i) + " outside 1.." +
                            std::to_string(last_index()));
  }
  const int r = static_cast<int>(i % p);
  if (i <= half * (p - 1) - 1) return join(ceil_div(i + 1, p - 1), v(r), u(r));
  if (i <= half * p - 1) return join(half * p - i, v(r), w(r));
  return join(ceil_div(i + 1 - half * p, p - 1), z(), w(r));
}

}  // namespace pmerge
