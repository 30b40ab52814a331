// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CFTG_GROUP_HPP_
#define CFTG_GROUP_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cftg/cone_system.hpp"

namespace cftg {

// Walk inside one cone of a system, with addresses relative to the cone.
// A step that would leave the cone through its frontier fails.
class ConeWalker {
 public:
  ConeWalker(const EndConeSystem& sys, int type, int vertex)
      : sys_(&sys), types_{type}, vertex_(vertex) {}

  bool step(Letter a);
  int depth() const { return static_cast<int>(slots_.size()); }
  int type() const { return types_.back(); }
  int vertex() const { return vertex_; }
  const std::vector<int>& slots() const { return slots_; }

 private:
  const EndConeSystem* sys_;
  std::vector<int> types_;
  std::vector<int> slots_;
  int vertex_;
};

std::optional<VertexAddress> act(const Ensemble& ens, std::size_t component,
                                 const VertexAddress& x, const Word& g);

// A cyclic shift of g moving a frontier vertex of some cone inside that
// cone.
struct IdentityWitness {
  std::size_t system = 0;
  int type = 0;
  int vertex = 0;
  std::size_t shift = 0;
  VertexAddress end;  // relative to the cone
};

struct IdentityResult {
  bool identity = true;
  std::optional<IdentityWitness> witness;
};

IdentityResult is_identity(const Ensemble& ens, const Word& g);

// Number of types, maximal frontier size, maximal number of child slots
// (maxima over the components).
struct Constants {
  int types = 0;
  int frontier = 0;
  int children = 0;
};
Constants constants(const Ensemble& ens);

struct TorsionBound {
  // |g| * frontier * children^(types * |g|), saturating.
  std::uint64_t raw = 0;
  bool raw_saturated = false;
  // |g| * frontier * sum_{j <= types*|g|} children^j: no g-circuit is longer.
  std::uint64_t per_circuit = 0;
  bool per_circuit_saturated = false;
  // lcm(1..per_circuit): every finite order divides it.
  std::uint64_t order_cap = 0;
  bool exceeds_u64 = false;
};
TorsionBound torsion_bound(const Ensemble& ens, const Word& g);

// Two points of an in-cone walk of a cyclic shift of g with the same cone
// type, frontier vertex and phase, the second strictly deeper inside the
// cone of the first.
struct InfiniteCertificate {
  std::size_t system = 0;
  int type = 0;
  int vertex = 0;
  std::size_t shift = 0;
  std::size_t from_step = 0;
  std::size_t to_step = 0;
  int color_type = 0;
  int color_vertex = 0;
  std::size_t phase = 0;
  int from_depth = 0;
  int to_depth = 0;
  bool beyond_bound = false;  // no power up to the order cap is trivial
};

struct OrderResult {
  enum class Kind { kFinite, kInfinite, kUnknown };
  Kind kind = Kind::kUnknown;
  std::uint64_t order = 0;
  std::optional<InfiniteCertificate> certificate;
  std::uint64_t searched_up_to = 0;
};

OrderResult order(const Ensemble& ens, const Word& g, std::uint64_t max_exp);

struct FinitenessResult {
  enum class Kind { kFinite, kInfinite };
  Kind kind = Kind::kFinite;
  std::uint64_t vertices = 0;       // all components, when finite
  std::size_t system = 0;           // component with a type cycle
  std::vector<int> cycle;           // types along the cycle
};

// Throws InputError for systems that fail validation.
FinitenessResult is_finite_group(const Ensemble& ens);

}  // namespace cftg

#endif  // CFTG_GROUP_HPP_
