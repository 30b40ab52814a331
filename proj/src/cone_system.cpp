// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#include "cftg/cone_system.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>
#include <set>
#include <sstream>

#include "cftg/error.hpp"

namespace cftg {

std::optional<int> ConeType::frontier_index(const std::string& n) const {
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    if (frontier[i] == n) return static_cast<int>(i);
  }
  return std::nullopt;
}

EndConeSystem::EndConeSystem(Alphabet alphabet, std::vector<ConeType> types,
                             int root_type)
    : alphabet_(std::move(alphabet)), types_(std::move(types)), root_(root_type) {
  const int n = type_count();
  if (n == 0) throw InputError("system: no types");
  if (root_ < 0 || root_ >= n) throw InputError("system: root type out of range");
  const std::size_t k = alphabet_.size();
  moves_.resize(types_.size());
  exits_.resize(types_.size());
  for (int t = 0; t < n; ++t) {
    const ConeType& ct = types_[static_cast<std::size_t>(t)];
    const int f = static_cast<int>(ct.frontier.size());
    auto where = [&](const std::string& what) {
      return "system: type " + std::to_string(t) + " (" + ct.name + "): " + what;
    };
    for (int c : ct.children) {
      if (c < 0 || c >= n) throw InputError(where("child type out of range"));
    }
    for (const auto& e : ct.internal_edges) {
      if (e.from < 0 || e.from >= f || e.to < 0 || e.to >= f) {
        throw InputError(where("internal edge endpoint out of range"));
      }
      if (!alphabet_.contains(e.letter)) throw InputError(where("bad letter"));
    }
    for (const auto& e : ct.cross_edges) {
      if (e.from < 0 || e.from >= f) {
        throw InputError(where("cross edge source out of range"));
      }
      if (e.slot < 0 || e.slot >= static_cast<int>(ct.children.size())) {
        throw InputError(where("cross edge slot out of range"));
      }
      const auto& child = types_[static_cast<std::size_t>(ct.children[static_cast<std::size_t>(e.slot)])];
      if (e.to < 0 || e.to >= static_cast<int>(child.frontier.size())) {
        throw InputError(where("cross edge target out of range"));
      }
      if (!alphabet_.contains(e.letter)) throw InputError(where("bad letter"));
    }
  }
  for (int t = 0; t < n; ++t) {
    const ConeType& ct = types_[static_cast<std::size_t>(t)];
    auto& mt = moves_[static_cast<std::size_t>(t)];
    mt.assign(ct.frontier.size(), std::vector<Move>(k));
    for (const auto& e : ct.internal_edges) {
      Move& m = mt[static_cast<std::size_t>(e.from)][e.letter];
      if (m.kind == MoveKind::kNone) m = {MoveKind::kInternal, -1, e.to};
    }
    for (const auto& e : ct.cross_edges) {
      Move& m = mt[static_cast<std::size_t>(e.from)][e.letter];
      if (m.kind == MoveKind::kNone) m = {MoveKind::kCross, e.slot, e.to};
    }
    for (auto& row : mt) {
      for (auto& m : row) {
        if (m.kind == MoveKind::kNone) m.kind = MoveKind::kExit;
      }
    }
    auto& et = exits_[static_cast<std::size_t>(t)];
    et.resize(ct.children.size());
    for (std::size_t j = 0; j < ct.children.size(); ++j) {
      const auto& child = types_[static_cast<std::size_t>(ct.children[j])];
      et[j].assign(child.frontier.size(), std::vector<int>(k, -1));
    }
    for (const auto& e : ct.cross_edges) {
      int& u = et[static_cast<std::size_t>(e.slot)][static_cast<std::size_t>(e.to)]
                 [alphabet_.inverse(e.letter)];
      if (u < 0) u = e.from;
    }
  }
}

int EndConeSystem::exit_target(int p, int slot, int w, Letter a) const {
  return exits_[static_cast<std::size_t>(p)][static_cast<std::size_t>(slot)]
               [static_cast<std::size_t>(w)][a];
}

int EndConeSystem::type_at(const std::vector<int>& slots) const {
  int t = root_;
  for (int s : slots) {
    const auto& ch = types_[static_cast<std::size_t>(t)].children;
    if (s < 0 || s >= static_cast<int>(ch.size())) {
      throw InputError("address: slot " + std::to_string(s) +
                       " does not exist in type " + std::to_string(t));
    }
    t = ch[static_cast<std::size_t>(s)];
  }
  return t;
}

std::vector<int> EndConeSystem::first_depth() const {
  std::vector<int> depth(types_.size(), -1);
  std::deque<int> queue{root_};
  depth[static_cast<std::size_t>(root_)] = 0;
  while (!queue.empty()) {
    int t = queue.front();
    queue.pop_front();
    for (int c : types_[static_cast<std::size_t>(t)].children) {
      if (depth[static_cast<std::size_t>(c)] < 0) {
        depth[static_cast<std::size_t>(c)] = depth[static_cast<std::size_t>(t)] + 1;
        queue.push_back(c);
      }
    }
  }
  return depth;
}

std::vector<bool> EndConeSystem::reachable_types() const {
  auto d = first_depth();
  std::vector<bool> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i] >= 0;
  return out;
}

int EndConeSystem::max_frontier() const {
  std::size_t m = 0;
  for (const auto& t : types_) m = std::max(m, t.frontier.size());
  return static_cast<int>(m);
}

int EndConeSystem::max_children() const {
  std::size_t m = 0;
  for (const auto& t : types_) m = std::max(m, t.children.size());
  return static_cast<int>(m);
}

std::size_t EndConeSystem::slot_count() const {
  std::size_t n = 0;
  for (const auto& t : types_) n += t.children.size();
  return n;
}

std::vector<ValidationIssue> validate(const EndConeSystem& sys) {
  std::vector<ValidationIssue> issues;
  const Alphabet& A = sys.alphabet();
  auto issue = [&](std::string kind, int t, std::string msg) {
    issues.push_back({std::move(kind), t, std::move(msg)});
  };
  const auto& types = sys.types();
  const int root = sys.root_type();
  if (types[static_cast<std::size_t>(root)].frontier.size() != 1) {
    issue("root-frontier", root, "root frontier must be a single vertex");
  }
  std::vector<std::vector<std::set<Letter>>> used(types.size());
  for (int t = 0; t < sys.type_count(); ++t) {
    const ConeType& ct = sys.type(t);
    std::set<std::string> names;
    for (const auto& n : ct.frontier) {
      if (n.empty() || n.find('|') != std::string::npos) {
        issue("frontier-names", t, "bad frontier name '" + n + "'");
      }
      if (!names.insert(n).second) {
        issue("frontier-names", t, "duplicate frontier name '" + n + "'");
      }
    }
    auto& u = used[static_cast<std::size_t>(t)];
    u.resize(ct.frontier.size());
    auto use = [&](int v, Letter a) {
      if (!u[static_cast<std::size_t>(v)].insert(a).second) {
        issue("determinism", t,
              "two edges labelled " + A.name(a) + " leave '" +
                  ct.frontier[static_cast<std::size_t>(v)] + "'");
      }
    };
    std::set<std::tuple<int, Letter, int>> internal;
    for (const auto& e : ct.internal_edges) {
      use(e.from, e.letter);
      internal.insert({e.from, e.letter, e.to});
    }
    for (const auto& e : ct.internal_edges) {
      if (!internal.count({e.to, A.inverse(e.letter), e.from})) {
        issue("involution", t,
              "internal edge " + ct.frontier[static_cast<std::size_t>(e.from)] +
                  " -" + A.name(e.letter) + "-> " +
                  ct.frontier[static_cast<std::size_t>(e.to)] +
                  " has no reverse edge");
      }
    }
    std::vector<bool> covered(ct.children.size(), false);
    std::map<std::tuple<int, int, Letter>, int> incoming;
    for (const auto& e : ct.cross_edges) {
      use(e.from, e.letter);
      covered[static_cast<std::size_t>(e.slot)] = true;
      auto key = std::make_tuple(e.slot, e.to, A.inverse(e.letter));
      if (!incoming.emplace(key, e.from).second) {
        issue("determinism", t,
              "two cross edges labelled " + A.name(e.letter) + " enter slot " +
                  std::to_string(e.slot) + " at the same vertex");
      }
    }
    for (std::size_t j = 0; j < covered.size(); ++j) {
      if (!covered[j]) {
        issue("slot-coverage", t,
              "slot " + std::to_string(j) + " has no cross edge");
      }
    }
  }
  auto missing = [&](int t, int v) {
    std::set<Letter> m;
    for (Letter a = 0; a < A.size(); ++a) {
      if (!used[static_cast<std::size_t>(t)][static_cast<std::size_t>(v)].count(a)) m.insert(a);
    }
    return m;
  };
  auto fmt = [&](const std::set<Letter>& s) {
    std::string out = "{";
    for (Letter a : s) {
      if (out.size() > 1) out += ",";
      out += A.name(a);
    }
    return out + "}";
  };
  if (!missing(root, 0).empty() &&
      types[static_cast<std::size_t>(root)].frontier.size() == 1) {
    issue("root-completeness", root,
          "root vertex lacks letters " + fmt(missing(root, 0)));
  }
  auto reachable = sys.reachable_types();
  for (int p = 0; p < sys.type_count(); ++p) {
    if (!reachable[static_cast<std::size_t>(p)]) continue;
    const ConeType& pt = sys.type(p);
    for (std::size_t j = 0; j < pt.children.size(); ++j) {
      const int h = pt.children[j];
      const ConeType& ht = sys.type(h);
      for (std::size_t w = 0; w < ht.frontier.size(); ++w) {
        std::set<Letter> entering;
        for (const auto& e : pt.cross_edges) {
          if (e.slot == static_cast<int>(j) && e.to == static_cast<int>(w)) {
            entering.insert(A.inverse(e.letter));
          }
        }
        auto miss = missing(h, static_cast<int>(w));
        if (miss.empty()) {
          issue("geometry", h,
                "frontier vertex '" + ht.frontier[w] +
                    "' has no letter leading one level up");
        }
        if (entering != miss) {
          issue("exit-letters", h,
                "in slot " + std::to_string(j) + " of type " +
                    std::to_string(p) + ", vertex '" + ht.frontier[w] +
                    "' misses " + fmt(miss) + " but the parent provides " +
                    fmt(entering));
        }
      }
    }
  }
  return issues;
}

VertexAddress root_address(const EndConeSystem&) { return VertexAddress{}; }

std::optional<VertexAddress> neighbor_address(const EndConeSystem& sys,
                                              const VertexAddress& x,
                                              Letter a) {
  if (!sys.alphabet().contains(a)) return std::nullopt;
  int parent = -1;
  int t = sys.root_type();
  for (int s : x.slots) {
    parent = t;
    const auto& ch = sys.type(t).children;
    if (s < 0 || s >= static_cast<int>(ch.size())) return std::nullopt;
    t = ch[static_cast<std::size_t>(s)];
  }
  if (x.vertex < 0 || x.vertex >= static_cast<int>(sys.type(t).frontier.size())) {
    return std::nullopt;
  }
  const auto& m = sys.move(t, x.vertex, a);
  VertexAddress y = x;
  switch (m.kind) {
    case EndConeSystem::MoveKind::kInternal:
      y.vertex = m.target;
      return y;
    case EndConeSystem::MoveKind::kCross:
      y.slots.push_back(m.slot);
      y.vertex = m.target;
      return y;
    case EndConeSystem::MoveKind::kExit: {
      if (x.slots.empty()) return std::nullopt;
      int u = sys.exit_target(parent, x.slots.back(), x.vertex, a);
      if (u < 0) return std::nullopt;
      y.slots.pop_back();
      y.vertex = u;
      return y;
    }
    case EndConeSystem::MoveKind::kNone:
      break;
  }
  return std::nullopt;
}

VertexKey address_key(const EndConeSystem& sys, const VertexAddress& x) {
  std::string out;
  for (std::size_t i = 0; i < x.slots.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(x.slots[i]);
  }
  out += '|';
  out += sys.type(sys.type_at(x.slots)).frontier.at(static_cast<std::size_t>(x.vertex));
  return out;
}

VertexAddress parse_address(const EndConeSystem& sys, const VertexKey& key) {
  auto bar = key.find('|');
  if (bar == std::string::npos) {
    throw InputError("address '" + key + "' has no '|' separator");
  }
  VertexAddress x;
  std::string path = key.substr(0, bar);
  std::size_t i = 0;
  while (i < path.size()) {
    std::size_t j = path.find('.', i);
    if (j == std::string::npos) j = path.size();
    std::string tok = path.substr(i, j - i);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
      throw InputError("address '" + key + "' has a bad slot '" + tok + "'");
    }
    x.slots.push_back(std::stoi(tok));
    i = j + 1;
  }
  int t = sys.type_at(x.slots);
  auto v = sys.type(t).frontier_index(key.substr(bar + 1));
  if (!v) {
    throw InputError("address '" + key + "' names no frontier vertex of type " +
                     std::to_string(t));
  }
  x.vertex = *v;
  return x;
}

LazyInverseGraph as_lazy_graph(const EndConeSystem& sys) {
  auto shared = std::make_shared<EndConeSystem>(sys);
  bool complete = validate(sys).empty();
  return LazyInverseGraph(
      sys.alphabet(), address_key(sys, root_address(sys)),
      [shared](const VertexKey& k, Letter a) -> std::optional<VertexKey> {
        auto y = neighbor_address(*shared, parse_address(*shared, k), a);
        if (!y) return std::nullopt;
        return address_key(*shared, *y);
      },
      complete);
}

PresentationCheck verify_presentation(const EndConeSystem& sys,
                                      const LazyInverseGraph& g, int radius) {
  if (!(sys.alphabet() == g.alphabet())) {
    throw InputError("verify_presentation: alphabets differ");
  }
  auto lazy = as_lazy_graph(sys);
  auto cmp = compare_balls(lazy, lazy.root(), g, g.root(), radius);
  return {cmp.isomorphic, cmp.conflict, cmp.direction};
}

EndConeSystem pad(const EndConeSystem& sys, const Alphabet& target) {
  const Alphabet& src = sys.alphabet();
  std::vector<Letter> to_target(src.size());
  std::vector<bool> hit(target.size(), false);
  for (Letter a = 0; a < src.size(); ++a) {
    auto t = target.find(src.name(a));
    if (!t) {
      throw InputError("pad: letter '" + src.name(a) +
                       "' missing from the target alphabet");
    }
    to_target[a] = *t;
    hit[*t] = true;
  }
  std::vector<ConeType> types = sys.types();
  for (auto& t : types) {
    for (auto& e : t.internal_edges) e.letter = to_target[e.letter];
    for (auto& e : t.cross_edges) e.letter = to_target[e.letter];
    for (int v = 0; v < static_cast<int>(t.frontier.size()); ++v) {
      for (Letter a = 0; a < target.size(); ++a) {
        if (!hit[a]) t.internal_edges.push_back({v, a, v});
      }
    }
  }
  return EndConeSystem(target, std::move(types), sys.root_type());
}

Ensemble::Ensemble(std::vector<EndConeSystem> systems)
    : systems_(std::move(systems)) {
  if (systems_.empty()) throw InputError("ensemble: no systems");
  for (const auto& s : systems_) {
    if (!(s.alphabet() == systems_.front().alphabet())) {
      throw InputError("ensemble: systems use different alphabets");
    }
  }
}

Ensemble disjoint_union(const std::vector<EndConeSystem>& systems) {
  std::vector<std::string> gens;
  for (const auto& s : systems) {
    for (const auto& g : s.alphabet().generators()) {
      if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
    }
  }
  Alphabet A = Alphabet::from_generators(gens);
  std::vector<EndConeSystem> padded;
  for (const auto& s : systems) padded.push_back(pad(s, A));
  return Ensemble(std::move(padded));
}

nlohmann::ordered_json system_to_json(const EndConeSystem& sys) {
  const Alphabet& A = sys.alphabet();
  nlohmann::ordered_json out;
  out["alphabet"] = A.generators();
  out["root_type"] = sys.root_type();
  auto types = nlohmann::ordered_json::array();
  for (const auto& t : sys.types()) {
    nlohmann::ordered_json jt;
    jt["name"] = t.name;
    jt["frontier"] = t.frontier;
    auto ie = nlohmann::ordered_json::array();
    for (const auto& e : t.internal_edges) {
      ie.push_back({t.frontier[static_cast<std::size_t>(e.from)], A.name(e.letter),
                    t.frontier[static_cast<std::size_t>(e.to)]});
    }
    jt["internal_edges"] = std::move(ie);
    jt["children"] = t.children;
    auto ce = nlohmann::ordered_json::array();
    for (const auto& e : t.cross_edges) {
      const auto& child = sys.type(t.children[static_cast<std::size_t>(e.slot)]);
      ce.push_back({t.frontier[static_cast<std::size_t>(e.from)], A.name(e.letter),
                    e.slot, child.frontier[static_cast<std::size_t>(e.to)]});
    }
    jt["cross_edges"] = std::move(ce);
    types.push_back(std::move(jt));
  }
  out["types"] = std::move(types);
  return out;
}

namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* key,
                            const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(where + ": missing field '" + key + "'");
  }
  return j.at(key);
}

}  // namespace

EndConeSystem system_from_json(const nlohmann::json& j) {
  try {
    const auto& alpha = field(j, "alphabet", "system");
    Alphabet A = Alphabet::from_generators(alpha.get<std::vector<std::string>>());
    int root = j.contains("root_type") ? j.at("root_type").get<int>() : 0;
    const auto& jtypes = field(j, "types", "system");
    if (!jtypes.is_array()) throw InputError("system: 'types' must be an array");
    std::vector<ConeType> types;
    for (std::size_t i = 0; i < jtypes.size(); ++i) {
      const std::string where = "system: types[" + std::to_string(i) + "]";
      const auto& jt = jtypes[i];
      ConeType t;
      t.name = jt.contains("name") ? jt.at("name").get<std::string>()
                                   : "t" + std::to_string(i);
      t.frontier = field(jt, "frontier", where).get<std::vector<std::string>>();
      if (jt.contains("children")) t.children = jt.at("children").get<std::vector<int>>();
      types.push_back(std::move(t));
    }
    for (std::size_t i = 0; i < jtypes.size(); ++i) {
      const std::string where = "system: types[" + std::to_string(i) + "]";
      const auto& jt = jtypes[i];
      ConeType& t = types[i];
      auto vertex = [&](const ConeType& ct, const nlohmann::json& n) {
        auto v = ct.frontier_index(n.get<std::string>());
        if (!v) {
          throw InputError(where + ": unknown frontier vertex '" +
                           n.get<std::string>() + "'");
        }
        return *v;
      };
      if (jt.contains("internal_edges")) {
        for (const auto& e : jt.at("internal_edges")) {
          if (!e.is_array() || e.size() != 3) {
            throw InputError(where + ": internal edges are [from, letter, to]");
          }
          t.internal_edges.push_back(
              {vertex(t, e[0]), A.letter(e[1].get<std::string>()), vertex(t, e[2])});
        }
      }
      if (jt.contains("cross_edges")) {
        for (const auto& e : jt.at("cross_edges")) {
          if (!e.is_array() || e.size() != 4) {
            throw InputError(where + ": cross edges are [from, letter, slot, to]");
          }
          int slot = e[2].get<int>();
          if (slot < 0 || slot >= static_cast<int>(t.children.size())) {
            throw InputError(where + ": cross edge slot out of range");
          }
          int child = t.children[static_cast<std::size_t>(slot)];
          if (child < 0 || child >= static_cast<int>(types.size())) {
            throw InputError(where + ": child type out of range");
          }
          t.cross_edges.push_back({vertex(t, e[0]), A.letter(e[1].get<std::string>()),
                                   slot, vertex(types[static_cast<std::size_t>(child)], e[3])});
        }
      }
    }
    return EndConeSystem(std::move(A), std::move(types), root);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("system: ") + e.what());
  }
}

}  // namespace cftg
