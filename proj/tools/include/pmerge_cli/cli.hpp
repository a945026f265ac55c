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

#include <ostream>

namespace pmerge::cli {

/// Exit codes of the pmerge tool.
inline constexpr int kOk = 0;
inline constexpr int kClaimFailed = 1;
inline constexpr int kUsageError = 2;

/// Parses argv and runs one subcommand, writing to `out` and `err` only.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pmerge::cli
