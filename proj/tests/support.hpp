// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

// Helpers shared by the unit tests and the acceptance runner.

#ifndef CFTG_TESTS_SUPPORT_HPP_
#define CFTG_TESTS_SUPPORT_HPP_

#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "cftg/examples.hpp"
#include "cftg/graph.hpp"

namespace cftg::testing {

// Closed-form check: v.g == v for every vertex v within `radius` of the root.
// Breadth-first, stopping at the first vertex that moves.
inline bool oracle_fixes_ball(const OracleGraph& o, const Word& g, int radius) {
  std::unordered_set<VertexKey> seen{o.graph.root()};
  std::vector<VertexKey> layer{o.graph.root()};
  for (int d = 0;; ++d) {
    for (const auto& v : layer) {
      if (o.act(v, g) != v) return false;
    }
    if (d == radius) return true;
    std::vector<VertexKey> next;
    for (const auto& v : layer) {
      for (Letter a = 0; a < o.graph.alphabet().size(); ++a) {
        auto u = o.graph.neighbor(v, a);
        if (u && seen.insert(*u).second) next.push_back(std::move(*u));
      }
    }
    layer = std::move(next);
  }
}

inline Word word(const Alphabet& A, const std::string& s) { return A.parse_word(s); }

inline Word commutator(const Alphabet& A, const Word& x, const Word& y) {
  Word w = x;
  for (const Word& p : {y, A.inverse(x), A.inverse(y)}) w.insert(w.end(), p.begin(), p.end());
  return A.reduce(w);
}

// x^k y x^-k
inline Word conjugate_power(const Alphabet& A, const Word& x, long k, const Word& y) {
  Word w = power(A, x, k);
  w.insert(w.end(), y.begin(), y.end());
  Word back = power(A, x, -k);
  w.insert(w.end(), back.begin(), back.end());
  return A.reduce(w);
}

// Reduced word of uniform length in [min_length, max_length].
inline Word random_word(const Alphabet& A, std::mt19937_64& rng, std::size_t max_length,
                        std::size_t min_length = 0) {
  std::uniform_int_distribution<std::size_t> len(min_length, max_length);
  return random_reduced_word(A, len(rng), rng);
}

}  // namespace cftg::testing

#endif  // CFTG_TESTS_SUPPORT_HPP_
