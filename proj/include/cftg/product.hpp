// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CFTG_PRODUCT_HPP_
#define CFTG_PRODUCT_HPP_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cftg/cone_system.hpp"
#include "cftg/graph.hpp"

namespace cftg {

// Chooses, for a non-root vertex of a factor, the graph of the other side
// glued at it (an index into the other side's list).
using GluingMap = std::function<int(const VertexKey&)>;

// Default target plus explicit exceptions plus integer ranges (for factors
// whose keys are integers). Ranges are checked in order, exceptions first.
struct GluingRule {
  int default_target = 0;
  std::map<VertexKey, int> exceptions;
  struct Range {
    std::optional<long> min;
    std::optional<long> max;
    int target = 0;
  };
  std::vector<Range> ranges;

  GluingMap as_map() const;
};

struct ProductFactor {
  LazyInverseGraph graph;  // over its own alphabet, rooted
  GluingMap glue;
};

// One side: a family of rooted graphs over a common sub-alphabet.
using ProductSide = std::vector<ProductFactor>;

// Free product of two families over disjoint alphabets. Vertices are
// alternating sequences of non-root factor vertices; the empty sequence is
// the common root of the first graph of each side.
//
// Keys: "o" for the root, otherwise entries "<side>:<graph>[<factor key>]"
// concatenated. `alphabet`, when given, fixes the letter order of the
// result; its generators must be exactly the union of the sides'.
//
// Throws InputError on overlapping alphabets, empty sides or a missing
// target alphabet letter.
LazyInverseGraph free_product(const ProductSide& left, const ProductSide& right,
                              const std::optional<Alphabet>& alphabet = std::nullopt);

// Splits a free-product key into (side, graph, factor key) entries.
struct ProductEntry {
  int side = 0;
  int graph = 0;
  VertexKey key;
};
std::vector<ProductEntry> parse_product_key(const VertexKey& key);
VertexKey product_key(const std::vector<ProductEntry>& entries);

// Inverse automaton whose transitions t --y|u--> t' read a letter y of the
// inflated alphabet and write a word u of the base graph's alphabet.
struct SchreierAutomaton {
  Alphabet input;
  std::vector<std::string> states;  // states[0] is the identity state
  struct Transition {
    int from;
    Letter letter;
    Word output;
    int to;
  };
  std::vector<Transition> transitions;
};

// Throws InputError naming the offending transition when the automaton is
// not deterministic or not inverse.
void validate_automaton(const SchreierAutomaton& t, const Alphabet& base);

// Graph on states x vertices; key "<state>@<vertex key>".
LazyInverseGraph inflated_graph(const LazyInverseGraph& g, const SchreierAutomaton& t);

// One rooted graph for a subgroup generated by an involution-closed list of
// words, labeled by those words.
struct SubgroupComponent {
  int type = 0;
  VertexAddress vertex;  // in the system
  LazyInverseGraph graph;
};

// For every type and every vertex of its cone within distance n of the
// frontier (at the type's shallowest occurrence), the graph of the walks
// labeled by `words` from that vertex. Words must come in inverse pairs;
// generator i of the new alphabet is names[i] (default x1, x2, ...) and is
// the first word of its pair. Throws InputError otherwise.
std::vector<SubgroupComponent> subgroup_graphs(const EndConeSystem& sys,
                                               const std::vector<Word>& words, int n,
                                               const std::vector<std::string>& names = {});

}  // namespace cftg

#endif  // CFTG_PRODUCT_HPP_
