// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CFTG_GRAPH_HPP_
#define CFTG_GRAPH_HPP_

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cftg/alphabet.hpp"

namespace cftg {

using VertexKey = std::string;

// A deterministic inverse graph given by a pure neighbor function over
// canonical string keys. Copies share the neighbor function.
class LazyInverseGraph {
 public:
  using NeighborFn =
      std::function<std::optional<VertexKey>(const VertexKey&, Letter)>;

  LazyInverseGraph() = default;
  LazyInverseGraph(Alphabet alphabet, VertexKey root, NeighborFn neighbor,
                   bool complete)
      : alphabet_(std::move(alphabet)),
        root_(std::move(root)),
        neighbor_(std::make_shared<NeighborFn>(std::move(neighbor))),
        complete_(complete) {}

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const VertexKey& root() const noexcept { return root_; }
  bool complete() const noexcept { return complete_; }

  std::optional<VertexKey> neighbor(const VertexKey& v, Letter a) const {
    return (*neighbor_)(v, a);
  }

 private:
  Alphabet alphabet_;
  VertexKey root_;
  std::shared_ptr<NeighborFn> neighbor_;
  bool complete_ = true;
};

// Follows w from v; nullopt as soon as an edge is missing.
std::optional<VertexKey> walk(const LazyInverseGraph& g, VertexKey v,
                              const Word& w);

// A materialized ball. Vertices are in BFS order (letters in id order), so
// the layout is deterministic.
struct FiniteGraph {
  struct Edge {
    std::size_t from;
    Letter letter;
    std::size_t to;
  };

  Alphabet alphabet;
  std::vector<VertexKey> vertices;
  std::vector<int> distance;
  std::vector<Edge> edges;  // every directed edge, both letters of a pair
  std::size_t center = 0;
  bool has_root = false;
  std::size_t root = 0;
  std::vector<std::size_t> partial;  // vertices with an undefined neighbor
  std::unordered_map<VertexKey, std::size_t> index;

  std::optional<std::size_t> find(const VertexKey& v) const {
    auto it = index.find(v);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

FiniteGraph expand_ball(const LazyInverseGraph& g, const VertexKey& center,
                        int radius);

// Sizes of the spheres of radius 0..max_radius around center.
std::vector<std::size_t> sphere_sizes(const LazyInverseGraph& g,
                                      const VertexKey& center, int max_radius);
std::size_t sphere_size(const LazyInverseGraph& g, const VertexKey& center,
                        int radius);

// Witness for a failed morphism propagation: following letter from vertex
// in the source, the target was expected to be `expected` but was `found`.
struct Conflict {
  VertexKey vertex;
  Letter letter = 0;
  std::optional<VertexKey> expected;
  std::optional<VertexKey> found;
  std::string reason;
};

struct Morphism {
  std::map<VertexKey, VertexKey> map;
};

using MorphismResult = std::variant<Morphism, Conflict>;

// Extends root -> image along edges of the source ball of the given radius.
MorphismResult propagate_morphism(const LazyInverseGraph& source,
                                  const VertexKey& source_root,
                                  const LazyInverseGraph& target,
                                  const VertexKey& image, int radius);

// Morphisms in both directions between the rooted balls: the balls are
// isomorphic exactly when both succeed.
struct BallComparison {
  bool isomorphic = true;
  std::optional<Conflict> conflict;
  std::string direction;  // "forward" or "backward" when a conflict exists
};
BallComparison compare_balls(const LazyInverseGraph& a, const VertexKey& ra,
                             const LazyInverseGraph& b, const VertexKey& rb,
                             int radius);

struct Acceptance {
  bool accepted = false;
  bool incomplete = false;  // a missing edge stopped the walk
};
Acceptance accepts(const LazyInverseGraph& g, const VertexKey& start,
                   const Word& w);

// First violation of determinism-compatible inverse symmetry within the
// ball: an edge v -a-> u whose reverse u -a'-> v is missing or different.
std::optional<Conflict> check_involutive(const LazyInverseGraph& g,
                                         const VertexKey& center, int radius);

// Lazy view of an explicit finite edge list. Edges are given once per
// involution pair; their inverses are added. Throws InputError on
// nondeterminism.
struct FiniteEdge {
  VertexKey from;
  Letter letter;
  VertexKey to;
};
LazyInverseGraph finite_graph(const Alphabet& alphabet,
                              const std::vector<VertexKey>& vertices,
                              const std::vector<FiniteEdge>& edges,
                              const VertexKey& root);

// Renames letters into a larger alphabet by name and adds loops for the
// letters the source graph does not know about.
LazyInverseGraph pad(const LazyInverseGraph& g, const Alphabet& target);

std::string to_dot(const FiniteGraph& g);
nlohmann::ordered_json to_json(const FiniteGraph& g);

}  // namespace cftg

#endif  // CFTG_GRAPH_HPP_
