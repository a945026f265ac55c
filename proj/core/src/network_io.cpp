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

#include "pmerge/network_io.hpp"

#include <sstream>

#include "json.hpp"

namespace pmerge {

using nlohmann::json;

std::string network_to_json(const Network& net) {
  json stages = json::array();
  for (const Stage& s : net.stages()) {
    json comps = json::array();
    for (const Comparator& c : s.comparators()) comps.push_back({c.lo, c.hi});
    stages.push_back(std::move(comps));
  }
  json doc;
  doc["registers"] = net.register_count();
  doc["stages"] = std::move(stages);
  return doc.dump();
}

Network network_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw StructureError(std::string("network JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("registers") || !doc.contains("stages") ||
      !doc["registers"].is_number_unsigned() || !doc["stages"].is_array()) {
    throw StructureError("network JSON must be {\"registers\": N, \"stages\": [...]}");
  }
  std::vector<Stage> stages;
  for (const json& st : doc["stages"]) {
    if (!st.is_array()) throw StructureError("network JSON: a stage must be an array");
    std::vector<Comparator> comps;
    for (const json& c : st) {
      if (!c.is_array() || c.size() != 2 || !c[0].is_number_unsigned() ||
          !c[1].is_number_unsigned()) {
        throw StructureError("network JSON: a comparator must be [i, j]");
      }
      comps.push_back({c[0].get<std::size_t>(), c[1].get<std::size_t>()});
    }
    stages.emplace_back(std::move(comps));
  }
  return Network(doc["registers"].get<std::size_t>(), std::move(stages));
}

std::string network_to_dot(const Network& net, std::string_view name) {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  os << "  rankdir=LR;\n  newrank=true;\n  splines=false;\n";
  os << "  node [shape=point, width=0.06];\n  edge [arrowsize=0.4];\n";
  // Column 0 holds the register labels; column s+1 holds stage s.
  os << "  subgraph cluster_labels {\n    style=invis;\n";
  for (std::size_t r = 0; r < net.register_count(); ++r) {
    os << "    l" << r << " [shape=plaintext, label=\"" << r << "\"];\n";
  }
  os << "  }\n";
  for (std::size_t s = 0; s < net.depth(); ++s) {
    os << "  subgraph cluster_stage" << s + 1 << " {\n";
    os << "    label=\"" << s + 1 << "\";\n    color=gray80;\n";
    os << "    { rank=same;";
    for (std::size_t r = 0; r < net.register_count(); ++r) os << " s" << s + 1 << "_" << r << ";";
    os << " }\n";
    for (const Comparator& c : net.stage(s).comparators()) {
      os << "    s" << s + 1 << "_" << c.lo << " -> s" << s + 1 << "_" << c.hi
         << " [constraint=false];\n";
    }
    os << "  }\n";
  }
  // Invisible register rows keep every node of register r on one rank line.
  for (std::size_t r = 0; r < net.register_count(); ++r) {
    os << "  l" << r;
    for (std::size_t s = 0; s < net.depth(); ++s) os << " -> s" << s + 1 << "_" << r;
    os << " [style=invis];\n";
  }
  os << "}\n";
  return os.str();
}

std::string network_to_listing(const Network& net) {
  std::ostringstream os;
  os << "registers: " << net.register_count() << "\n";
  for (std::size_t s = 0; s < net.depth(); ++s) {
    os << "stage " << s + 1 << ":";
    for (const Comparator& c : net.stage(s).comparators()) os << ' ' << to_string(c);
    os << "\n";
  }
  return os.str();
}

}  // namespace pmerge
