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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace pmerge {

/// Worker count: NETS_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Calls body(chunk) for every chunk in [0, chunks) on up to worker_count()
/// threads. Chunks are claimed dynamically; callers store per-chunk results
/// by index so the outcome does not depend on scheduling. The first
/// exception thrown by a body is rethrown after all workers stop.
void parallel_for(std::size_t chunks, const std::function<void(std::size_t)>& body);

/// splitmix64 finaliser.
std::uint64_t mix64(std::uint64_t x);

/// Independent generator for substream `index` of `seed`.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index);

}  // namespace pmerge
