// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#include "cftg/inference.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_map>

#include "cftg/error.hpp"

namespace cftg {
namespace {

constexpr int kOutside = -1;  // neighbor beyond the probed ball
constexpr int kExitToken = -1;
constexpr int kTruncToken = -2;
constexpr int kSeparator = -9;

struct Ball {
  std::vector<VertexKey> keys;
  std::vector<int> level;
  std::vector<int> nbr;  // vertex * k + letter
  int k = 0;

  int at(int v, Letter a) const { return nbr[static_cast<std::size_t>(v * k + a)]; }
};

Ball probe(const LazyInverseGraph& g, int radius) {
  Ball b;
  b.k = static_cast<int>(g.alphabet().size());
  std::unordered_map<VertexKey, int> index;
  b.keys.push_back(g.root());
  b.level.push_back(0);
  index.emplace(g.root(), 0);
  std::vector<std::vector<std::optional<VertexKey>>> cache;
  for (std::size_t i = 0; i < b.keys.size(); ++i) {
    cache.emplace_back(static_cast<std::size_t>(b.k));
    for (Letter a = 0; a < b.k; ++a) {
      auto u = g.neighbor(b.keys[i], a);
      if (!u) {
        throw InputError("inference needs a complete graph: '" + b.keys[i] +
                         "' has no " + g.alphabet().name(a) + "-edge");
      }
      if (b.level[i] < radius && !index.count(*u)) {
        index.emplace(*u, static_cast<int>(b.keys.size()));
        b.keys.push_back(*u);
        b.level.push_back(b.level[i] + 1);
      }
      cache.back()[a] = std::move(u);
    }
  }
  b.nbr.assign(b.keys.size() * static_cast<std::size_t>(b.k), kOutside);
  for (std::size_t i = 0; i < b.keys.size(); ++i) {
    for (Letter a = 0; a < b.k; ++a) {
      auto it = index.find(*cache[i][a]);
      if (it != index.end()) b.nbr[i * static_cast<std::size_t>(b.k) + a] = it->second;
    }
  }
  return b;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

struct Cone {
  int level = 0;
  std::vector<int> frontier;  // ball vertices, BFS order
  std::vector<int> children;  // cone ids
};

struct Canonical {
  std::vector<int> form;
  std::unordered_map<int, int> label;  // ball vertex -> canonical position
};

class Classifier {
 public:
  explicit Classifier(const Ball& b) : b_(b) {}

  // Canonical form of the cone truncated to `depth` levels below its
  // frontier: components of the truncation, each serialized from its best
  // starting frontier vertex, sorted.
  Canonical canonical(const Cone& c, int depth) const {
    const int n = c.level;
    std::vector<std::pair<std::vector<int>, std::vector<int>>> comps;  // form, order
    std::unordered_map<int, bool> seen;
    for (int f : c.frontier) {
      if (seen.count(f)) continue;
      std::vector<int> best_form, best_order;
      auto [form0, order0] = serialize(f, n, depth);
      for (int v : order0) seen[v] = true;
      const std::vector<int> members = order0;
      best_form = std::move(form0);
      best_order = std::move(order0);
      for (int g : members) {
        if (g == f || b_.level[static_cast<std::size_t>(g)] != n) continue;
        auto [form, order] = serialize(g, n, depth);
        if (form < best_form) {
          best_form = std::move(form);
          best_order = std::move(order);
        }
      }
      comps.emplace_back(std::move(best_form), std::move(best_order));
    }
    std::sort(comps.begin(), comps.end());
    Canonical out;
    int offset = 0;
    for (auto& [form, order] : comps) {
      out.form.insert(out.form.end(), form.begin(), form.end());
      out.form.push_back(kSeparator);
      for (std::size_t i = 0; i < order.size(); ++i) {
        out.label.emplace(order[i], offset + static_cast<int>(i));
      }
      offset += static_cast<int>(order.size());
    }
    return out;
  }

 private:
  std::pair<std::vector<int>, std::vector<int>> serialize(int start, int n,
                                                          int depth) const {
    std::vector<int> order{start};
    std::unordered_map<int, int> number{{start, 0}};
    std::vector<int> form;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const int v = order[i];
      form.push_back(b_.level[static_cast<std::size_t>(v)] - n);
      for (Letter a = 0; a < b_.k; ++a) {
        const int u = b_.at(v, a);
        const int lu = u == kOutside ? b_.level[static_cast<std::size_t>(v)] + 1
                                     : b_.level[static_cast<std::size_t>(u)];
        if (lu < n) {
          form.push_back(kExitToken);
        } else if (lu > n + depth || u == kOutside) {
          form.push_back(kTruncToken);
        } else {
          auto [it, inserted] = number.emplace(u, static_cast<int>(order.size()));
          if (inserted) order.push_back(u);
          form.push_back(it->second);
        }
      }
    }
    return {std::move(form), std::move(order)};
  }

  const Ball& b_;
};

}  // namespace

InferResult infer_system(const LazyInverseGraph& g, int probe_radius,
                         int stabilization_depth) {
  const int d = probe_radius;
  const int s = stabilization_depth;
  if (s < 0 || d < s + 2) {
    throw InputError("infer_system: need probe radius >= stabilization depth + 2");
  }
  const Ball b = probe(g, d);
  const std::size_t nv = b.keys.size();

  // End-cones at every level, by union-find over decreasing levels.
  std::vector<std::vector<int>> by_level(static_cast<std::size_t>(d) + 1);
  for (std::size_t v = 0; v < nv; ++v) by_level[static_cast<std::size_t>(b.level[v])].push_back(static_cast<int>(v));
  UnionFind uf(nv);
  std::vector<int> cone_of(nv, -1);
  std::vector<int> parent_cone(nv, -1);
  std::vector<Cone> cones;
  for (int n = d; n >= 0; --n) {
    for (int v : by_level[static_cast<std::size_t>(n)]) {
      for (Letter a = 0; a < b.k; ++a) {
        int u = b.at(v, a);
        if (u >= 0 && b.level[static_cast<std::size_t>(u)] >= n) uf.unite(v, u);
      }
    }
    std::unordered_map<int, int> cone_by_root;
    for (int v : by_level[static_cast<std::size_t>(n)]) {
      int r = uf.find(v);
      auto [it, inserted] = cone_by_root.emplace(r, static_cast<int>(cones.size()));
      if (inserted) cones.push_back(Cone{n, {}, {}});
      cones[static_cast<std::size_t>(it->second)].frontier.push_back(v);
      cone_of[static_cast<std::size_t>(v)] = it->second;
    }
    if (n < d) {
      for (int x : by_level[static_cast<std::size_t>(n) + 1]) {
        parent_cone[static_cast<std::size_t>(x)] = cone_by_root.at(uf.find(x));
      }
    }
  }
  // Renumber cones by (level, first frontier vertex).
  std::vector<int> perm(cones.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int x, int y) {
    const Cone& cx = cones[static_cast<std::size_t>(x)];
    const Cone& cy = cones[static_cast<std::size_t>(y)];
    return std::make_pair(cx.level, cx.frontier.front()) <
           std::make_pair(cy.level, cy.frontier.front());
  });
  std::vector<int> rank(cones.size());
  for (std::size_t i = 0; i < perm.size(); ++i) rank[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
  {
    std::vector<Cone> sorted;
    for (int p : perm) sorted.push_back(std::move(cones[static_cast<std::size_t>(p)]));
    cones = std::move(sorted);
    for (auto& c : cone_of) c = rank[static_cast<std::size_t>(c)];
    for (auto& c : parent_cone) {
      if (c >= 0) c = rank[static_cast<std::size_t>(c)];
    }
  }
  for (std::size_t v = 0; v < nv; ++v) {
    const int pc = parent_cone[v];
    if (pc < 0) continue;
    auto& ch = cones[static_cast<std::size_t>(pc)].children;
    const int c = cone_of[v];
    if (std::find(ch.begin(), ch.end(), c) == ch.end()) ch.push_back(c);
  }

  // Classification at depths s and s + 1.
  Classifier cl(b);
  const int classify_limit = d - s - 1;
  const int children_limit = d - s - 2;
  std::map<std::vector<int>, int> ids_s, ids_s1;
  std::vector<int> cls_s(cones.size(), -1), cls(cones.size(), -1);
  std::vector<Canonical> canon(cones.size());
  for (std::size_t c = 0; c < cones.size(); ++c) {
    if (cones[c].level > classify_limit) continue;
    auto fs = cl.canonical(cones[c], s).form;
    cls_s[c] = ids_s.emplace(std::move(fs), static_cast<int>(ids_s.size())).first->second;
    canon[c] = cl.canonical(cones[c], s + 1);
    cls[c] = ids_s1.emplace(canon[c].form, static_cast<int>(ids_s1.size())).first->second;
  }
  {
    std::map<int, int> fwd, bwd;
    for (std::size_t c = 0; c < cones.size(); ++c) {
      if (cls[c] < 0) continue;
      auto [f, fi] = fwd.emplace(cls_s[c], cls[c]);
      auto [r, ri] = bwd.emplace(cls[c], cls_s[c]);
      if (f->second != cls[c] || r->second != cls_s[c]) {
        return NotStabilized{"cone classes at depth " + std::to_string(s) +
                             " and " + std::to_string(s + 1) +
                             " disagree (cone at level " +
                             std::to_string(cones[c].level) + ", vertex '" +
                             b.keys[static_cast<std::size_t>(cones[c].frontier.front())] + "')"};
      }
    }
  }

  // Child structure in canonical terms; must agree within a class.
  auto label_of = [&](std::size_t c, int v) {
    return canon[c].label.at(v);
  };
  auto ordered_children = [&](std::size_t c) {
    std::vector<std::pair<int, int>> keyed;
    for (int ch : cones[c].children) {
      int m = INT32_MAX;
      for (int x : cones[static_cast<std::size_t>(ch)].frontier) m = std::min(m, label_of(c, x));
      keyed.emplace_back(m, ch);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> out;
    for (auto& kv : keyed) out.push_back(kv.second);
    return out;
  };
  auto frontier_by_label = [&](std::size_t c) {
    std::vector<std::pair<int, int>> keyed;
    for (int v : cones[c].frontier) keyed.emplace_back(label_of(c, v), v);
    std::sort(keyed.begin(), keyed.end());
    return keyed;
  };
  auto signature = [&](std::size_t c) {
    std::vector<int> sig;
    auto children = ordered_children(c);
    for (int ch : children) sig.push_back(cls[static_cast<std::size_t>(ch)]);
    sig.push_back(kSeparator);
    for (auto [lu, u] : frontier_by_label(c)) {
      for (Letter a = 0; a < b.k; ++a) {
        int x = b.at(u, a);
        if (x < 0 || b.level[static_cast<std::size_t>(x)] != cones[c].level + 1) continue;
        int slot = static_cast<int>(std::find(children.begin(), children.end(),
                                              cone_of[static_cast<std::size_t>(x)]) -
                                    children.begin());
        sig.insert(sig.end(), {lu, a, slot,
                               label_of(static_cast<std::size_t>(cone_of[static_cast<std::size_t>(x)]), x)});
      }
    }
    return sig;
  };
  std::map<int, std::size_t> representative;
  std::map<int, std::vector<int>> class_signature;
  for (std::size_t c = 0; c < cones.size(); ++c) {
    if (cones[c].level > children_limit) continue;
    auto sig = signature(c);
    auto [it, inserted] = class_signature.emplace(cls[c], sig);
    if (inserted) {
      representative.emplace(cls[c], c);
    } else if (it->second != sig) {
      return NotStabilized{"cones of one class have different children (level " +
                           std::to_string(cones[c].level) + ", vertex '" +
                           b.keys[static_cast<std::size_t>(cones[c].frontier.front())] + "')"};
    }
  }

  // Assemble types reachable from the root cone.
  const int root_cls = cls[0];
  std::map<int, int> type_of_class{{root_cls, 0}};
  std::vector<int> order{root_cls};
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto it = representative.find(order[i]);
    if (it == representative.end()) {
      return NotStabilized{"a cone type first occurs too deep for probe radius " +
                           std::to_string(d)};
    }
    for (int ch : ordered_children(it->second)) {
      int k = cls[static_cast<std::size_t>(ch)];
      if (type_of_class.emplace(k, static_cast<int>(order.size())).second) order.push_back(k);
    }
  }
  std::vector<ConeType> types(order.size());
  std::vector<std::map<int, int>> name_index(order.size());  // label -> frontier index
  for (std::size_t t = 0; t < order.size(); ++t) {
    const std::size_t c = representative.at(order[t]);
    auto fr = frontier_by_label(c);
    for (std::size_t i = 0; i < fr.size(); ++i) {
      name_index[t].emplace(fr[i].first, static_cast<int>(i));
      types[t].frontier.push_back(t == 0 ? "x0" : "v" + std::to_string(i));
    }
    types[t].name = t == 0 ? "root" : "t" + std::to_string(t);
  }
  for (std::size_t t = 0; t < order.size(); ++t) {
    const std::size_t c = representative.at(order[t]);
    ConeType& ct = types[t];
    auto children = ordered_children(c);
    for (int ch : children) ct.children.push_back(type_of_class.at(cls[static_cast<std::size_t>(ch)]));
    const int n = cones[c].level;
    for (auto [lu, u] : frontier_by_label(c)) {
      const int from = name_index[t].at(lu);
      for (Letter a = 0; a < b.k; ++a) {
        int x = b.at(u, a);
        if (x < 0) continue;
        const int lx = b.level[static_cast<std::size_t>(x)];
        if (lx == n) {
          ct.internal_edges.push_back({from, a, name_index[t].at(label_of(c, x))});
        } else if (lx == n + 1) {
          const std::size_t xc = static_cast<std::size_t>(cone_of[static_cast<std::size_t>(x)]);
          const int slot = static_cast<int>(
              std::find(children.begin(), children.end(), static_cast<int>(xc)) - children.begin());
          const int ht = ct.children[static_cast<std::size_t>(slot)];
          ct.cross_edges.push_back(
              {from, a, slot, name_index[static_cast<std::size_t>(ht)].at(label_of(xc, x))});
        }
      }
    }
  }
  EndConeSystem sys(g.alphabet(), std::move(types), 0);
  auto issues = validate(sys);
  if (!issues.empty()) {
    return NotStabilized{"assembled system is invalid: " + issues.front().kind +
                         ": " + issues.front().message};
  }
  auto check = verify_presentation(sys, g, d - s);
  if (!check.ok) {
    return NotStabilized{"assembled system disagrees with the graph (" +
                         check.direction + ", vertex '" + check.conflict->vertex +
                         "', letter " + g.alphabet().name(check.conflict->letter) +
                         ")"};
  }
  return sys;
}

}  // namespace cftg
