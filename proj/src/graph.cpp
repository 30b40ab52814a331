// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#include "cftg/graph.hpp"

#include <deque>
#include <set>
#include <map>
#include <sstream>

#include "cftg/error.hpp"

namespace cftg {

std::optional<VertexKey> walk(const LazyInverseGraph& g, VertexKey v,
                              const Word& w) {
  for (Letter a : w) {
    auto next = g.neighbor(v, a);
    if (!next) return std::nullopt;
    v = std::move(*next);
  }
  return v;
}

FiniteGraph expand_ball(const LazyInverseGraph& g, const VertexKey& center,
                        int radius) {
  FiniteGraph out;
  out.alphabet = g.alphabet();
  const std::size_t k = g.alphabet().size();
  out.vertices.push_back(center);
  out.distance.push_back(0);
  out.index.emplace(center, 0);
  // Neighbors are cached per vertex so edges are computed once.
  std::vector<std::vector<std::optional<VertexKey>>> nbrs;
  for (std::size_t i = 0; i < out.vertices.size(); ++i) {
    nbrs.emplace_back(k);
    bool partial = false;
    for (Letter a = 0; a < k; ++a) {
      auto u = g.neighbor(out.vertices[i], a);
      if (!u) {
        partial = true;
        continue;
      }
      if (out.distance[i] < radius && !out.index.count(*u)) {
        out.index.emplace(*u, out.vertices.size());
        out.vertices.push_back(*u);
        out.distance.push_back(out.distance[i] + 1);
      }
      nbrs[i][a] = std::move(u);
    }
    if (partial) out.partial.push_back(i);
  }
  for (std::size_t i = 0; i < out.vertices.size(); ++i) {
    for (Letter a = 0; a < k; ++a) {
      if (!nbrs[i][a]) continue;
      auto j = out.find(*nbrs[i][a]);
      if (j) out.edges.push_back({i, a, *j});
    }
  }
  out.center = 0;
  if (auto r = out.find(g.root())) {
    out.has_root = true;
    out.root = *r;
  }
  return out;
}

std::vector<std::size_t> sphere_sizes(const LazyInverseGraph& g,
                                      const VertexKey& center,
                                      int max_radius) {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(max_radius) + 1, 0);
  std::unordered_map<VertexKey, int> dist{{center, 0}};
  std::vector<VertexKey> frontier{center};
  sizes[0] = 1;
  for (int d = 1; d <= max_radius; ++d) {
    std::vector<VertexKey> next;
    for (const auto& v : frontier) {
      for (Letter a = 0; a < g.alphabet().size(); ++a) {
        auto u = g.neighbor(v, a);
        if (u && dist.emplace(*u, d).second) next.push_back(std::move(*u));
      }
    }
    sizes[static_cast<std::size_t>(d)] = next.size();
    frontier = std::move(next);
  }
  return sizes;
}

std::size_t sphere_size(const LazyInverseGraph& g, const VertexKey& center,
                        int radius) {
  return sphere_sizes(g, center, radius).back();
}

MorphismResult propagate_morphism(const LazyInverseGraph& source,
                                  const VertexKey& source_root,
                                  const LazyInverseGraph& target,
                                  const VertexKey& image, int radius) {
  Morphism m;
  std::unordered_map<VertexKey, int> dist;
  std::deque<VertexKey> queue;
  m.map.emplace(source_root, image);
  dist.emplace(source_root, 0);
  queue.push_back(source_root);
  while (!queue.empty()) {
    VertexKey v = std::move(queue.front());
    queue.pop_front();
    const int dv = dist.at(v);
    const VertexKey& fv = m.map.at(v);
    for (Letter a = 0; a < source.alphabet().size(); ++a) {
      auto sv = source.neighbor(v, a);
      if (!sv) continue;
      auto known = m.map.find(*sv);
      if (known == m.map.end() && dv >= radius) continue;
      auto tv = target.neighbor(fv, a);
      if (!tv) {
        return Conflict{v, a,
                        known == m.map.end() ? std::nullopt
                                             : std::optional(known->second),
                        std::nullopt, "edge missing in target"};
      }
      if (known != m.map.end()) {
        if (known->second != *tv) {
          return Conflict{v, a, known->second, *tv, "inconsistent image"};
        }
        continue;
      }
      m.map.emplace(*sv, *tv);
      dist.emplace(*sv, dv + 1);
      queue.push_back(*sv);
    }
  }
  return m;
}

BallComparison compare_balls(const LazyInverseGraph& a, const VertexKey& ra,
                             const LazyInverseGraph& b, const VertexKey& rb,
                             int radius) {
  BallComparison out;
  auto fwd = propagate_morphism(a, ra, b, rb, radius);
  if (auto* c = std::get_if<Conflict>(&fwd)) {
    out.isomorphic = false;
    out.conflict = *c;
    out.direction = "forward";
    return out;
  }
  auto bwd = propagate_morphism(b, rb, a, ra, radius);
  if (auto* c = std::get_if<Conflict>(&bwd)) {
    out.isomorphic = false;
    out.conflict = *c;
    out.direction = "backward";
  }
  return out;
}

Acceptance accepts(const LazyInverseGraph& g, const VertexKey& start,
                   const Word& w) {
  auto end = walk(g, start, w);
  if (!end) return {false, true};
  return {*end == start, false};
}

std::optional<Conflict> check_involutive(const LazyInverseGraph& g,
                                         const VertexKey& center,
                                         int radius) {
  FiniteGraph ball = expand_ball(g, center, radius);
  for (const auto& v : ball.vertices) {
    for (Letter a = 0; a < g.alphabet().size(); ++a) {
      auto u = g.neighbor(v, a);
      if (!u) continue;
      auto back = g.neighbor(*u, g.alphabet().inverse(a));
      if (!back || *back != v) {
        return Conflict{*u, g.alphabet().inverse(a), v, back,
                        "reverse edge missing or different"};
      }
    }
  }
  return std::nullopt;
}

LazyInverseGraph finite_graph(const Alphabet& alphabet,
                              const std::vector<VertexKey>& vertices,
                              const std::vector<FiniteEdge>& edges,
                              const VertexKey& root) {
  using Table = std::map<std::pair<VertexKey, Letter>, VertexKey>;
  auto table = std::make_shared<Table>();
  std::set<VertexKey> known(vertices.begin(), vertices.end());
  if (!known.count(root)) throw InputError("finite graph: unknown root '" + root + "'");
  auto add = [&](const VertexKey& u, Letter a, const VertexKey& v) {
    auto [it, inserted] = table->emplace(std::make_pair(u, a), v);
    if (!inserted && it->second != v) {
      throw InputError("finite graph: two " + alphabet.name(a) +
                       "-edges leave '" + u + "'");
    }
  };
  for (const auto& e : edges) {
    if (!known.count(e.from) || !known.count(e.to)) {
      throw InputError("finite graph: edge uses unknown vertex");
    }
    alphabet.check_word({e.letter});
    add(e.from, e.letter, e.to);
    add(e.to, alphabet.inverse(e.letter), e.from);
  }
  bool complete = true;
  for (const auto& v : vertices) {
    for (Letter a = 0; a < alphabet.size(); ++a) {
      if (!table->count({v, a})) complete = false;
    }
  }
  return LazyInverseGraph(
      alphabet, root,
      [table](const VertexKey& v, Letter a) -> std::optional<VertexKey> {
        auto it = table->find({v, a});
        if (it == table->end()) return std::nullopt;
        return it->second;
      },
      complete);
}

LazyInverseGraph pad(const LazyInverseGraph& g, const Alphabet& target) {
  std::vector<std::optional<Letter>> to_source(target.size());
  for (Letter a = 0; a < g.alphabet().size(); ++a) {
    auto t = target.find(g.alphabet().name(a));
    if (!t) {
      throw InputError("pad: letter '" + g.alphabet().name(a) +
                       "' missing from the target alphabet");
    }
    to_source[*t] = a;
  }
  return LazyInverseGraph(
      target, g.root(),
      [g, to_source](const VertexKey& v, Letter a) -> std::optional<VertexKey> {
        if (!to_source[a]) return v;
        return g.neighbor(v, *to_source[a]);
      },
      g.complete());
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const FiniteGraph& g) {
  std::ostringstream os;
  os << "digraph G {\n  node [shape=circle];\n";
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    os << "  " << quote(g.vertices[i]);
    if (g.has_root && g.root == i) os << " [shape=doublecircle]";
    os << ";\n";
  }
  for (const auto& e : g.edges) {
    if (!g.alphabet.is_positive(e.letter)) continue;
    os << "  " << quote(g.vertices[e.from]) << " -> " << quote(g.vertices[e.to])
       << " [label=" << quote(g.alphabet.name(e.letter)) << "];\n";
  }
  os << "}\n";
  return os.str();
}

nlohmann::ordered_json to_json(const FiniteGraph& g) {
  nlohmann::ordered_json out;
  out["alphabet"] = g.alphabet.generators();
  out["center"] = g.vertices.at(g.center);
  out["root"] = g.has_root ? nlohmann::ordered_json(g.vertices[g.root])
                           : nlohmann::ordered_json(nullptr);
  std::vector<nlohmann::ordered_json> adj(g.vertices.size(),
                                          nlohmann::ordered_json::object());
  for (const auto& e : g.edges) {
    adj[e.from][g.alphabet.name(e.letter)] = g.vertices[e.to];
  }
  auto vs = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    nlohmann::ordered_json v;
    v["key"] = g.vertices[i];
    v["distance"] = g.distance[i];
    v["edges"] = adj[i];
    vs.push_back(std::move(v));
  }
  out["vertices"] = std::move(vs);
  auto partial = nlohmann::ordered_json::array();
  for (auto i : g.partial) partial.push_back(g.vertices[i]);
  out["partial"] = std::move(partial);
  return out;
}

}  // namespace cftg
