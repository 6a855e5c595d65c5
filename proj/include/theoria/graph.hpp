#pragma once

#include <sstream>
#include <string>

#include "theoria/elaborator.hpp"
#include "theoria/json_io.hpp"
#include "theoria/printer.hpp"

// Morphism-graph export: nodes are theories, edges are recorded arrows
// labeled with provenance and (when nontrivial) renaming.

namespace theoria {

inline std::string graph_to_dot(const LibraryEnv& env) {
  std::ostringstream os;
  os << "digraph theoria {\n";
  os << "  rankdir=BT;\n";
  os << "  node [shape=box, fontsize=10];\n";
  for (const auto& n : env.order) os << "  \"" << n.text << "\";\n";
  for (const auto& a : env.arrows) {
    std::string label = provenance_name(a.provenance);
    if (!a.renaming.empty()) label += " " + pretty_print(a.renaming);
    os << "  \"" << a.source.text << "\" -> \"" << a.target.text
       << "\" [label=\"" << label << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

inline json graph_to_json(const LibraryEnv& env) {
  json nodes = json::array();
  for (const auto& n : env.order) nodes.push_back(n.text);
  json edges = json::array();
  for (const auto& a : env.arrows) edges.push_back(to_json(a));
  return {{"nodes", nodes}, {"edges", edges}};
}

}  // namespace theoria
