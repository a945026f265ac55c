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

#include <string>
#include <string_view>

#include "pmerge/network.hpp"

namespace pmerge {

/// {"registers": N, "stages": [[[i,j],...],...]}, 0-based indices.
std::string network_to_json(const Network& net);

/// Inverse of network_to_json. Throws StructureError on schema violations.
Network network_from_json(std::string_view text);

/// Graphviz drawing: registers are horizontal rows, each stage is a column
/// cluster and every comparator a vertical edge inside its column.
std::string network_to_dot(const Network& net, std::string_view name = "network");

/// One line per stage: "stage 3: [1:4] [3:6] ...".
std::string network_to_listing(const Network& net);

}  // namespace pmerge
