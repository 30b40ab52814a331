// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#include "cftg/boundary.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "cftg/error.hpp"
#include "cftg/group.hpp"

namespace cftg {
namespace {

// All companion components as one graph; keys "<component>#<address key>".
LazyInverseGraph companion_graph(const Ensemble& ens) {
  std::vector<LazyInverseGraph> parts;
  for (const auto& sys : ens.systems()) parts.push_back(as_lazy_graph(sys));
  return LazyInverseGraph(
      ens.alphabet(), "0#" + parts.at(0).root(),
      [parts](const VertexKey& k, Letter a) -> std::optional<VertexKey> {
        auto hash = k.find('#');
        if (hash == std::string::npos) return std::nullopt;
        const std::size_t c = std::stoul(k.substr(0, hash));
        if (c >= parts.size()) return std::nullopt;
        auto n = parts[c].neighbor(k.substr(hash + 1), a);
        if (!n) return std::nullopt;
        return k.substr(0, hash + 1) + *n;
      },
      true);
}

std::string component_of(const VertexKey& k) { return k.substr(0, k.find('#')); }

struct Matcher {
  const LazyInverseGraph& g;
  const LazyInverseGraph& t;
  const FiniteGraph& ball;  // perturbed graph around its root
  int n;
  int r;
  std::vector<VertexKey> candidates;
  std::map<VertexKey, VertexKey> fwd;
  std::map<VertexKey, VertexKey> bwd;
  std::size_t budget = 200000;
  std::string witness;

  bool outside(const VertexKey& v) const {
    auto i = ball.find(v);
    return !i || ball.distance[*i] > n;
  }

  // Maps the outside region reachable from `start` within r steps, sending
  // start to y. On failure the maps are restored.
  bool place(const VertexKey& start, const VertexKey& y) {
    if (bwd.count(y)) return false;
    std::vector<VertexKey> added{start};
    fwd[start] = y;
    bwd[y] = start;
    std::map<VertexKey, int> depth{{start, 0}};
    std::deque<VertexKey> queue{start};
    std::vector<std::pair<VertexKey, Letter>> disk_edges;
    auto fail = [&](std::string why) {
      for (const auto& v : added) {
        bwd.erase(fwd[v]);
        fwd.erase(v);
      }
      if (witness.empty()) witness = std::move(why);
      return false;
    };
    const Alphabet& A = g.alphabet();
    while (!queue.empty()) {
      VertexKey u = queue.front();
      queue.pop_front();
      const int du = depth.at(u);
      if (du >= r) continue;
      const VertexKey fu = fwd.at(u);
      for (Letter a = 0; a < A.size(); ++a) {
        auto un = g.neighbor(u, a);
        auto tn = t.neighbor(fu, a);
        if (!un || !tn) {
          if (un.has_value() != tn.has_value()) {
            return fail(u + " -" + A.name(a) + "-> defined on one side only");
          }
          continue;
        }
        if (!outside(*un)) {
          disk_edges.push_back({u, a});
          continue;
        }
        auto it = fwd.find(*un);
        if (it != fwd.end()) {
          if (it->second != *tn) {
            return fail(u + " -" + A.name(a) + "-> " + *un + " maps to " + it->second +
                        " but the companion edge leads to " + *tn);
          }
          continue;
        }
        if (bwd.count(*tn)) {
          return fail(u + " -" + A.name(a) + "-> " + *un + " would reuse companion vertex " + *tn);
        }
        fwd[*un] = *tn;
        bwd[*tn] = *un;
        added.push_back(*un);
        depth[*un] = du + 1;
        queue.push_back(*un);
      }
    }
    for (const auto& [u, a] : disk_edges) {
      auto tn = t.neighbor(fwd.at(u), a);
      if (bwd.count(*tn)) {
        return fail(u + " -" + A.name(a) + "-> enters the disk but the companion edge from " +
                    fwd.at(u) + " stays in the image at " + *tn);
      }
    }
    return true;
  }

  bool covered(const FiniteGraph& companion_ball, int skip) {
    std::set<std::string> hit;
    for (const auto& [y, u] : bwd) hit.insert(component_of(y));
    for (const auto& y : companion_ball.vertices) {
      if (!hit.count(component_of(y))) {
        witness = "companion component " + component_of(y) + " is not matched";
        return false;
      }
    }
    for (std::size_t i = 0; i < companion_ball.vertices.size(); ++i) {
      const int d = companion_ball.distance[i];
      if (d > skip && d <= r && !bwd.count(companion_ball.vertices[i])) {
        witness = "companion vertex " + companion_ball.vertices[i] + " is not matched";
        return false;
      }
    }
    return true;
  }

  bool search(const std::vector<VertexKey>& sphere, std::size_t i,
              const std::vector<FiniteGraph>& companion_balls, int skip) {
    while (i < sphere.size() && fwd.count(sphere[i])) ++i;
    if (i == sphere.size()) {
      for (const auto& b : companion_balls) {
        if (!covered(b, skip)) return false;
      }
      return true;
    }
    for (const auto& y : candidates) {
      if (budget == 0) {
        witness = "search limit reached";
        return false;
      }
      --budget;
      auto snap_f = fwd;
      auto snap_b = bwd;
      if (!place(sphere[i], y)) continue;
      if (search(sphere, i + 1, companion_balls, skip)) return true;
      fwd = std::move(snap_f);
      bwd = std::move(snap_b);
    }
    return false;
  }
};

int max_first_depth(const Ensemble& ens) {
  int d = 0;
  for (const auto& sys : ens.systems()) {
    for (int x : sys.first_depth()) d = std::max(d, x);
  }
  return d;
}

}  // namespace

AgreementReport check_local_agreement(PerturbationPair& pair, int r) {
  if (r <= pair.n) throw InputError("agreement radius must exceed the disk radius");
  if (!(pair.companion.alphabet() == pair.perturbed.alphabet())) {
    throw InputError("perturbed system and companion use different alphabets");
  }
  const int n = pair.n;
  LazyInverseGraph g = as_lazy_graph(pair.perturbed);
  LazyInverseGraph t = companion_graph(pair.companion);
  FiniteGraph ball = expand_ball(g, g.root(), n + 1 + r);
  const int skip = 2 * (n + 1);

  Matcher m{g, t, ball, n, r, {}, {}, {}, 200000, {}};
  std::vector<FiniteGraph> companion_balls;
  std::set<VertexKey> seen;
  for (std::size_t c = 0; c < pair.companion.size(); ++c) {
    const VertexKey root = std::to_string(c) + "#" + address_key(pair.companion[c], root_address(pair.companion[c]));
    companion_balls.push_back(expand_ball(t, root, r));
    for (std::size_t i = 0; i < companion_balls.back().vertices.size(); ++i) {
      const auto& y = companion_balls.back().vertices[i];
      if (companion_balls.back().distance[i] <= skip && seen.insert(y).second) {
        m.candidates.push_back(y);
      }
    }
  }
  std::vector<VertexKey> sphere;
  for (std::size_t i = 0; i < ball.vertices.size(); ++i) {
    if (ball.distance[i] == n + 1) sphere.push_back(ball.vertices[i]);
  }

  AgreementReport rep;
  rep.ok = m.search(sphere, 0, companion_balls, skip);
  if (rep.ok) {
    // Count components: sphere vertices joined through the mapped region.
    std::map<VertexKey, VertexKey> parent;
    std::function<VertexKey(const VertexKey&)> find = [&](const VertexKey& v) {
      auto it = parent.find(v);
      if (it == parent.end() || it->second == v) return v;
      return it->second = find(it->second);
    };
    for (const auto& [u, y] : m.fwd) parent[u] = u;
    for (const auto& [u, y] : m.fwd) {
      for (Letter a = 0; a < g.alphabet().size(); ++a) {
        auto un = g.neighbor(u, a);
        if (un && m.fwd.count(*un)) parent[find(u)] = find(*un);
      }
    }
    std::set<VertexKey> roots;
    for (const auto& [u, y] : m.fwd) roots.insert(find(u));
    rep.components = static_cast<int>(roots.size());
    pair.agreement_radius = std::max(pair.agreement_radius, r);
  } else {
    rep.witness = m.witness.empty() ? "no matching found" : m.witness;
  }
  return rep;
}

bool in_O_n(const PerturbationPair& pair, const Word& u) {
  if (!pair.infinite_orbits) {
    throw DomainError(
        "O_n membership needs every companion orbit to be infinite; the pair does not "
        "declare it, so circuits of the companion need not describe O_n");
  }
  pair.companion.alphabet().check_word(u);
  return is_identity(pair.companion, u).identity;
}

std::uint64_t boundary_order_bound(const PerturbationPair& pair, const Word& g) {
  if (!in_O_n(pair, g)) {
    throw DomainError("word " + pair.perturbed.alphabet().format(g) + " is not in O_n");
  }
  LazyInverseGraph lg = as_lazy_graph(pair.perturbed);
  const std::uint64_t s = sphere_size(lg, lg.root(), pair.n);
  return std::max<std::uint64_t>(1, s * g.size());
}

QuotientReport quotient_check(const PerturbationPair& pair, std::size_t samples,
                              std::mt19937_64& rng, std::size_t max_length) {
  QuotientReport rep;
  const Alphabet& A = pair.perturbed.alphabet();
  const int depth = max_first_depth(pair.companion);
  std::uniform_int_distribution<std::size_t> len(0, max_length);
  std::uniform_int_distribution<std::size_t> short_len(0, 4);

  // Action of u and v compared on every companion vertex that a nontrivial
  // u v^-1 would have to move.
  auto act_alike = [&](const Word& u, const Word& v) {
    const int radius = depth + static_cast<int>(u.size() + v.size());
    for (std::size_t c = 0; c < pair.companion.size(); ++c) {
      const auto& sys = pair.companion[c];
      LazyInverseGraph lg = as_lazy_graph(sys);
      FiniteGraph b = expand_ball(lg, lg.root(), radius);
      for (const auto& key : b.vertices) {
        VertexAddress x = parse_address(sys, key);
        if (act(pair.companion, c, x, u) != act(pair.companion, c, x, v)) return false;
      }
    }
    return true;
  };
  auto fmt = [&](const Word& w) { return A.format(w); };

  for (std::size_t i = 0; i < samples; ++i) {
    ++rep.samples;
    Word u = random_reduced_word(A, len(rng), rng);
    Word x = random_reduced_word(A, short_len(rng), rng);
    Word v = (i % 2 == 0) ? random_reduced_word(A, len(rng), rng) : A.reduce(concat(u, x));

    for (const Word& w : {u, concat(u, u)}) {
      if (is_identity(pair.perturbed, w).identity && !is_identity(pair.companion, w).identity) {
        rep.violations.push_back("identity " + fmt(w) + " of the perturbed system is not an identity of the companion");
      }
    }
    const Word uv = concat(u, A.inverse(v));
    const bool same = in_O_n(pair, uv);
    if (same != act_alike(u, v)) {
      rep.violations.push_back("u = " + fmt(u) + ", v = " + fmt(v) + ": O_n membership of u v^-1 is " +
                               (same ? "true" : "false") + " but the companion actions " +
                               (same ? "differ" : "agree"));
    }
    if (same) ++rep.equal_pairs;
    if (in_O_n(pair, x)) {
      const Word conj = concat(concat(A.inverse(u), x), u);
      if (!in_O_n(pair, conj)) {
        rep.violations.push_back("conjugate " + fmt(conj) + " of " + fmt(x) + " leaves O_n");
      }
    }
  }
  return rep;
}

}  // namespace cftg
