// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CFTG_BOUNDARY_HPP_
#define CFTG_BOUNDARY_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cftg/cone_system.hpp"
#include "cftg/graph.hpp"

namespace cftg {

// A system perturbed inside the disk of radius n around its root, and a
// companion ensemble that agrees with it outside that disk.
struct PerturbationPair {
  EndConeSystem perturbed;
  Ensemble companion;
  int n = 0;
  // The caller asserts that every companion orbit is infinite; required
  // before words are tested against the companion.
  bool infinite_orbits = false;
  int agreement_radius = 0;  // set by check_local_agreement
};

struct AgreementReport {
  bool ok = true;
  int components = 0;  // components of the perturbed graph outside the disk
  std::string witness;
};

// Matches every component of the perturbed graph outside the disk
// (vertices at distance > n) with a region of the companion: the map must
// be injective and edge-preserving up to distance r from the sphere of
// radius n+1, each companion edge leaving the image must correspond to an
// edge into the disk, and every companion component must be reached. On
// success the pair's agreement_radius is raised to r. Throws InputError
// when r <= n.
AgreementReport check_local_agreement(PerturbationPair& pair, int r);

// Words labeling a circuit at every vertex of the companion. Throws
// DomainError when the infinite-orbit declaration is missing.
bool in_O_n(const PerturbationPair& pair, const Word& u);

// |S_n(root)| * |g|, at least 1. Throws DomainError when g is not in O_n.
std::uint64_t boundary_order_bound(const PerturbationPair& pair, const Word& g);

struct QuotientReport {
  std::size_t samples = 0;
  std::size_t equal_pairs = 0;  // pairs with equal images in the quotient
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Random checks that identities of the perturbed system are identities of
// the companion, that u v^-1 in O_n exactly when u and v act alike on the
// companion (checked on balls), and that O_n is closed under conjugation.
QuotientReport quotient_check(const PerturbationPair& pair, std::size_t samples,
                              std::mt19937_64& rng, std::size_t max_length = 8);

}  // namespace cftg

#endif  // CFTG_BOUNDARY_HPP_
