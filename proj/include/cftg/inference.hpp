// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CFTG_INFERENCE_HPP_
#define CFTG_INFERENCE_HPP_

#include <string>
#include <variant>

#include "cftg/cone_system.hpp"
#include "cftg/graph.hpp"

namespace cftg {

struct NotStabilized {
  std::string reason;
};

using InferResult = std::variant<EndConeSystem, NotStabilized>;

// Splits the radius-`probe_radius` ball into end-cones, classifies them by a
// canonical form of their truncation to `stabilization_depth` levels, and
// assembles a system when that classification agrees with the one at one
// more level. The result is checked with verify_presentation at radius
// probe_radius - stabilization_depth before it is returned.
//
// Throws InputError when the graph has an undefined edge inside the ball.
InferResult infer_system(const LazyInverseGraph& g, int probe_radius,
                         int stabilization_depth);

}  // namespace cftg

#endif  // CFTG_INFERENCE_HPP_
