// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CFTG_CONE_SYSTEM_HPP_
#define CFTG_CONE_SYSTEM_HPP_

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cftg/alphabet.hpp"
#include "cftg/graph.hpp"

namespace cftg {

// Edge between two frontier vertices of the same cone.
struct InternalEdge {
  int from;
  Letter letter;
  int to;
};

// Edge from a frontier vertex of a cone to a frontier vertex of the child
// cone in `slot`. The reverse edge is implied.
struct CrossEdge {
  int from;
  Letter letter;
  int slot;
  int to;
};

struct ConeType {
  std::string name;
  std::vector<std::string> frontier;
  std::vector<InternalEdge> internal_edges;
  std::vector<int> children;  // slot -> type index
  std::vector<CrossEdge> cross_edges;

  std::optional<int> frontier_index(const std::string& name) const;
};

// A vertex: the slots chosen from the root cone downwards, then a frontier
// vertex of the cone reached.
struct VertexAddress {
  std::vector<int> slots;
  int vertex = 0;

  auto operator<=>(const VertexAddress&) const = default;
};

struct ValidationIssue {
  std::string kind;  // e.g. "determinism", "exit-letters"
  int type = -1;
  std::string message;
};

// Finite presentation of a rooted inverse graph by end-cone types.
//
// Construction accepts any structurally indexable data (indices in range);
// semantic checks live in validate(). Lookup tables keep the first edge
// when the data is nondeterministic.
class EndConeSystem {
 public:
  enum class MoveKind { kNone, kInternal, kCross, kExit };
  struct Move {
    MoveKind kind = MoveKind::kNone;
    int slot = -1;
    int target = -1;
  };

  EndConeSystem() = default;
  // Throws InputError when an index is out of range.
  EndConeSystem(Alphabet alphabet, std::vector<ConeType> types,
                int root_type = 0);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::vector<ConeType>& types() const noexcept { return types_; }
  const ConeType& type(int t) const { return types_.at(static_cast<std::size_t>(t)); }
  int root_type() const noexcept { return root_; }
  int type_count() const noexcept { return static_cast<int>(types_.size()); }

  // Move of frontier vertex v of type t by letter a, inside its own cone
  // description: internal, cross, or kExit when a is one of its missing
  // letters (the target is then resolved by the parent).
  const Move& move(int t, int v, Letter a) const {
    return moves_[static_cast<std::size_t>(t)][static_cast<std::size_t>(v)][a];
  }
  // Frontier vertex of parent type p reached from child slot's vertex w by
  // letter a, or -1.
  int exit_target(int p, int slot, int w, Letter a) const;

  // Type of the cone addressed by the given slot path; throws InputError on
  // an invalid path.
  int type_at(const std::vector<int>& slots) const;

  // Types reachable from the root type through child slots.
  std::vector<bool> reachable_types() const;
  // Smallest depth at which each type occurs (-1 if unreachable).
  std::vector<int> first_depth() const;

  // Constants used by the torsion bound: number of types, maximum frontier
  // size, maximum number of child slots.
  int max_frontier() const;
  int max_children() const;

  std::size_t slot_count() const;

 private:
  Alphabet alphabet_;
  std::vector<ConeType> types_;
  int root_ = 0;
  std::vector<std::vector<std::vector<Move>>> moves_;
  // exits_[p][slot][w][a] -> parent frontier vertex
  std::vector<std::vector<std::vector<std::vector<int>>>> exits_;
};

std::vector<ValidationIssue> validate(const EndConeSystem& sys);

std::optional<VertexAddress> neighbor_address(const EndConeSystem& sys,
                                              const VertexAddress& x,
                                              Letter a);

VertexAddress root_address(const EndConeSystem& sys);

// Canonical keys: slots joined by '.', then '|', then the frontier name.
// The root is "|x0" for a root frontier named x0.
VertexKey address_key(const EndConeSystem& sys, const VertexAddress& x);
VertexAddress parse_address(const EndConeSystem& sys, const VertexKey& key);

LazyInverseGraph as_lazy_graph(const EndConeSystem& sys);

// Both-direction morphism propagation between the radius-r balls.
struct PresentationCheck {
  bool ok = true;
  std::optional<Conflict> conflict;
  std::string direction;
};
PresentationCheck verify_presentation(const EndConeSystem& sys,
                                      const LazyInverseGraph& g, int radius);

// Renames letters into `target` by name and adds loops at every frontier
// vertex for letters the system does not use.
EndConeSystem pad(const EndConeSystem& sys, const Alphabet& target);

// Disjoint union of rooted components over one alphabet. The transition
// group acts on all of them at once.
class Ensemble {
 public:
  Ensemble() = default;
  explicit Ensemble(std::vector<EndConeSystem> systems);  // InputError on mixed alphabets
  Ensemble(const EndConeSystem& sys) : Ensemble(std::vector{sys}) {}  // NOLINT

  const Alphabet& alphabet() const { return systems_.at(0).alphabet(); }
  const std::vector<EndConeSystem>& systems() const { return systems_; }
  std::size_t size() const { return systems_.size(); }
  const EndConeSystem& operator[](std::size_t i) const { return systems_.at(i); }

 private:
  std::vector<EndConeSystem> systems_;
};

// Union of systems over possibly different alphabets: every component is
// padded with loops to the union alphabet (generator order of first
// appearance).
Ensemble disjoint_union(const std::vector<EndConeSystem>& systems);

nlohmann::ordered_json system_to_json(const EndConeSystem& sys);
EndConeSystem system_from_json(const nlohmann::json& j);  // InputError

}  // namespace cftg

#endif  // CFTG_CONE_SYSTEM_HPP_
