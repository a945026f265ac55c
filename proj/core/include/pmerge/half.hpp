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

#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace pmerge {

/// Exact value in (1/2)Z, stored as twice the value.
class Half {
 public:
  constexpr Half() = default;
  static constexpr Half from_twice(std::int64_t twice) { return Half(twice); }
  static constexpr Half from_int(std::int64_t v) { return Half(2 * v); }

  constexpr std::int64_t twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  friend constexpr Half operator-(Half a) { return Half(-a.twice_); }
  friend constexpr Half operator+(Half a, Half b) { return Half(a.twice_ + b.twice_); }
  friend constexpr Half operator-(Half a, Half b) { return Half(a.twice_ - b.twice_); }
  friend constexpr auto operator<=>(Half, Half) = default;

 private:
  explicit constexpr Half(std::int64_t twice) : twice_(twice) {}
  std::int64_t twice_ = 0;
};

/// "3", "-1/2", "5/2".
std::string to_string(Half h);

}  // namespace pmerge
