// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CFTG_EXAMPLES_HPP_
#define CFTG_EXAMPLES_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cftg/cone_system.hpp"
#include "cftg/graph.hpp"
#include "cftg/pda.hpp"

namespace cftg {

// A lazy graph together with a closed-form action (vertex, word) -> vertex
// that does not go through the neighbor function.
struct OracleGraph {
  std::string name;
  std::string description;
  LazyInverseGraph graph;
  std::function<VertexKey(const VertexKey&, const Word&)> act;
};

// Ladder on p_i, q_i over {a, b, c}: a moves along the p-line, b along the
// q-line, c swaps p_i and q_i; the other letters are loops. Keys "p<i>",
// "q<i>"; root p0. The oracle uses the normal form a^n b^m c^j.
OracleGraph omega();

// c-line with a-lines glued at positive vertices and b-lines glued at
// negative ones, recursively; the root carries b-lines and an a-loop. Keys
// are geodesic words from the root ("1" for the root).
OracleGraph antenna();

// Vertices z(i,j): the j-th copy of a c-line, level i; a moves between
// copies at level 0 and is a loop elsewhere. Root z(0,0).
OracleGraph comb();

// Two c-lines z(i,0), z(i,1) joined by a single a-edge pair at level 0,
// a-loops elsewhere. Root z(0,0).
OracleGraph torsion_graph();

OracleGraph line(const std::string& letter);          // keys are integers
OracleGraph cycle(const std::string& letter, int n);  // keys 0..n-1
OracleGraph loop_vertex(const std::vector<std::string>& letters);  // key "o"
OracleGraph free_tree(const std::vector<std::string>& generators);  // reduced words

// Configuration graph of the signed counter machine, with the line oracle.
OracleGraph counter_graph();

// The same three graphs assembled with free_product from their factors.
LazyInverseGraph antenna_product();
LazyInverseGraph comb_product();
LazyInverseGraph torsion_product();

// Hand-built systems.
EndConeSystem line_system(const std::string& letter = "a");
EndConeSystem cycle5_system();
EndConeSystem omega_system();
EndConeSystem free_tree_system(const std::vector<std::string>& generators);
EndConeSystem loop_system(const std::vector<std::string>& letters);

// Registry. Names: omega, antenna, comb, torsion, line, cycle5, free2,
// loop, counter.
std::vector<std::string> example_names();
std::optional<OracleGraph> example(const std::string& name);
// Hand-built where available, otherwise inferred (and cached). Throws
// DomainError if inference does not stabilize.
EndConeSystem example_system(const std::string& name);

// Companion of the torsion graph: two c-lines with a-loops everywhere.
Ensemble torsion_companion();

}  // namespace cftg

#endif  // CFTG_EXAMPLES_HPP_
