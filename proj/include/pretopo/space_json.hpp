#pragma once

#include "pretopo/core.hpp"

#include <string>
#include <string_view>

namespace pretopo {

// JSON form of a pseudoclosure space:
//
//   {"schema_version": 1,
//    "universe": ["a", "b", ...] | <item count>,
//    "kind": "prefilter" | "filter" | "graph",
//    "bases": [[[0, 1], [0, 3]], ...],   // neighborhood kinds, one list per item
//    "edges": [[1, 2], [2, 3]]}          // graph kind
//
// Basis sets and edges use 0-based item indices.
std::string write_space_json(const PseudoclosureSpace& space);
PseudoclosureSpace read_space_json(std::string_view text);

} // namespace pretopo
