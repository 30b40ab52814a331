// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#include "cftg/product.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <set>

#include "cftg/error.hpp"

namespace cftg {

GluingMap GluingRule::as_map() const {
  GluingRule rule = *this;
  return [rule](const VertexKey& k) {
    auto it = rule.exceptions.find(k);
    if (it != rule.exceptions.end()) return it->second;
    long x = 0;
    auto [p, ec] = std::from_chars(k.data(), k.data() + k.size(), x);
    if (ec == std::errc() && p == k.data() + k.size()) {
      for (const auto& r : rule.ranges) {
        if ((!r.min || x >= *r.min) && (!r.max || x <= *r.max)) return r.target;
      }
    }
    return rule.default_target;
  };
}

std::vector<ProductEntry> parse_product_key(const VertexKey& key) {
  std::vector<ProductEntry> out;
  if (key == "o") return out;
  std::size_t i = 0;
  auto fail = [&] { throw InputError("bad free-product key '" + key + "'"); };
  while (i < key.size()) {
    ProductEntry e;
    if (key[i] != '1' && key[i] != '2') fail();
    e.side = key[i] - '1';
    ++i;
    if (i >= key.size() || key[i] != ':') fail();
    ++i;
    std::size_t j = i;
    while (j < key.size() && key[j] >= '0' && key[j] <= '9') ++j;
    if (j == i || j >= key.size() || key[j] != '[') fail();
    e.graph = std::stoi(key.substr(i, j - i));
    int depth = 1;
    std::size_t k = j + 1;
    while (k < key.size() && depth > 0) {
      if (key[k] == '[') ++depth;
      if (key[k] == ']') --depth;
      ++k;
    }
    if (depth != 0) fail();
    e.key = key.substr(j + 1, k - j - 2);
    out.push_back(std::move(e));
    i = k;
  }
  return out;
}

VertexKey product_key(const std::vector<ProductEntry>& entries) {
  if (entries.empty()) return "o";
  std::string out;
  for (const auto& e : entries) {
    out += std::to_string(e.side + 1) + ":" + std::to_string(e.graph) + "[" + e.key + "]";
  }
  return out;
}

LazyInverseGraph free_product(const ProductSide& left, const ProductSide& right,
                              const std::optional<Alphabet>& alphabet) {
  if (left.empty() || right.empty()) throw InputError("free product: empty side");
  std::vector<std::string> gens;
  std::set<std::string> side_gens[2];
  const ProductSide* sides[2] = {&left, &right};
  for (int s = 0; s < 2; ++s) {
    const Alphabet& A = (*sides[s])[0].graph.alphabet();
    for (const auto& f : *sides[s]) {
      if (!(f.graph.alphabet() == A)) {
        throw InputError("free product: graphs of one side use different alphabets");
      }
      if (!f.glue) throw InputError("free product: missing gluing map");
    }
    for (const auto& g : A.generators()) {
      side_gens[s].insert(g);
      if (std::find(gens.begin(), gens.end(), g) != gens.end()) {
        throw InputError("free product: letter '" + g + "' occurs on both sides");
      }
      gens.push_back(g);
    }
  }
  Alphabet A = alphabet ? *alphabet : Alphabet::from_generators(gens);
  {
    auto ag = A.generators();
    std::set<std::string> want(gens.begin(), gens.end()), have(ag.begin(), ag.end());
    if (want != have) throw InputError("free product: alphabet does not match the factors");
  }
  // Global letter -> (side, local letter).
  std::vector<std::pair<int, Letter>> local(A.size());
  for (Letter a = 0; a < A.size(); ++a) {
    for (int s = 0; s < 2; ++s) {
      if (auto l = (*sides[s])[0].graph.alphabet().find(A.name(a))) local[a] = {s, *l};
    }
  }
  bool complete = true;
  for (int s = 0; s < 2; ++s) {
    for (const auto& f : *sides[s]) complete = complete && f.graph.complete();
  }
  auto L = std::make_shared<ProductSide>(left);
  auto R = std::make_shared<ProductSide>(right);
  return LazyInverseGraph(
      A, "o",
      [L, R, local](const VertexKey& key, Letter a) -> std::optional<VertexKey> {
        const ProductSide* fam[2] = {L.get(), R.get()};
        const auto [s, la] = local[a];
        auto entries = parse_product_key(key);
        if (!entries.empty() && entries.back().side == s) {
          ProductEntry& e = entries.back();
          const LazyInverseGraph& g = (*fam[s]).at(static_cast<std::size_t>(e.graph)).graph;
          auto nv = g.neighbor(e.key, la);
          if (!nv) return std::nullopt;
          if (*nv == g.root()) {
            entries.pop_back();
          } else {
            e.key = std::move(*nv);
          }
          return product_key(entries);
        }
        int gi = 0;
        if (!entries.empty()) {
          const ProductEntry& last = entries.back();
          gi = (*fam[last.side]).at(static_cast<std::size_t>(last.graph)).glue(last.key);
        }
        if (gi < 0 || gi >= static_cast<int>(fam[s]->size())) return std::nullopt;
        const LazyInverseGraph& g = (*fam[s])[static_cast<std::size_t>(gi)].graph;
        auto nv = g.neighbor(g.root(), la);
        if (!nv) return std::nullopt;
        if (*nv == g.root()) return key;
        entries.push_back({s, gi, std::move(*nv)});
        return product_key(entries);
      },
      complete);
}

void validate_automaton(const SchreierAutomaton& t, const Alphabet& base) {
  const int ns = static_cast<int>(t.states.size());
  if (ns == 0) throw InputError("automaton: no states");
  std::map<std::pair<int, Letter>, std::size_t> by_input;
  auto describe = [&](std::size_t i) {
    const auto& tr = t.transitions[i];
    return "transition " + std::to_string(i) + " (" +
           (tr.from >= 0 && tr.from < ns ? t.states[static_cast<std::size_t>(tr.from)] : "?") +
           " -" + (t.input.contains(tr.letter) ? t.input.name(tr.letter) : "?") + "|" +
           base.format(tr.output) + "-> " +
           (tr.to >= 0 && tr.to < ns ? t.states[static_cast<std::size_t>(tr.to)] : "?") + ")";
  };
  for (std::size_t i = 0; i < t.transitions.size(); ++i) {
    const auto& tr = t.transitions[i];
    if (tr.from < 0 || tr.from >= ns || tr.to < 0 || tr.to >= ns ||
        !t.input.contains(tr.letter)) {
      throw InputError("automaton: " + describe(i) + " is out of range");
    }
    base.check_word(tr.output);
    if (!by_input.emplace(std::make_pair(tr.from, tr.letter), i).second) {
      throw InputError("automaton: " + describe(i) + " is not deterministic");
    }
  }
  for (std::size_t i = 0; i < t.transitions.size(); ++i) {
    const auto& tr = t.transitions[i];
    auto it = by_input.find({tr.to, t.input.inverse(tr.letter)});
    if (it == by_input.end()) {
      throw InputError("automaton: " + describe(i) + " has no inverse transition");
    }
    const auto& back = t.transitions[it->second];
    if (back.to != tr.from || back.output != base.inverse(tr.output)) {
      throw InputError("automaton: " + describe(i) + " is not inverted by " +
                       describe(it->second));
    }
  }
}

LazyInverseGraph inflated_graph(const LazyInverseGraph& g, const SchreierAutomaton& t) {
  validate_automaton(t, g.alphabet());
  for (const auto& s : t.states) {
    if (s.empty() || s.find('@') != std::string::npos) {
      throw InputError("automaton: bad state name '" + s + "'");
    }
  }
  using Key = std::pair<int, Letter>;
  auto table = std::make_shared<std::map<Key, std::pair<Word, int>>>();
  for (const auto& tr : t.transitions) table->emplace(Key{tr.from, tr.letter}, std::make_pair(tr.output, tr.to));
  auto states = std::make_shared<std::vector<std::string>>(t.states);
  bool complete = g.complete() && table->size() == t.states.size() * t.input.size();
  return LazyInverseGraph(
      t.input, t.states[0] + "@" + g.root(),
      [g, table, states](const VertexKey& key, Letter y) -> std::optional<VertexKey> {
        auto at = key.find('@');
        if (at == std::string::npos) return std::nullopt;
        auto sit = std::find(states->begin(), states->end(), key.substr(0, at));
        if (sit == states->end()) return std::nullopt;
        auto it = table->find({static_cast<int>(sit - states->begin()), y});
        if (it == table->end()) return std::nullopt;
        auto p = walk(g, key.substr(at + 1), it->second.first);
        if (!p) return std::nullopt;
        return (*states)[static_cast<std::size_t>(it->second.second)] + "@" + *p;
      },
      complete);
}

std::vector<SubgroupComponent> subgroup_graphs(const EndConeSystem& sys,
                                               const std::vector<Word>& words0, int n,
                                               const std::vector<std::string>& names) {
  const Alphabet& A = sys.alphabet();
  std::vector<Word> words;
  for (const auto& w : words0) {
    Word r = A.reduce(w);
    if (r.empty()) throw InputError("subgroup: empty generator word");
    words.push_back(std::move(r));
  }
  // Pair every word with its inverse.
  std::vector<int> partner(words.size(), -1);
  std::vector<std::size_t> firsts;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (partner[i] >= 0) continue;
    const Word inv = A.inverse(words[i]);
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      if (partner[j] < 0 && words[j] == inv) {
        partner[i] = static_cast<int>(j);
        partner[j] = static_cast<int>(i);
        break;
      }
    }
    if (partner[i] < 0) {
      throw InputError("subgroup: word '" + A.format(words[i]) +
                       "' has no inverse in the list");
    }
    firsts.push_back(i);
  }
  std::vector<std::string> gens;
  for (std::size_t i = 0; i < firsts.size(); ++i) {
    gens.push_back(i < names.size() ? names[i] : "x" + std::to_string(i + 1));
  }
  Alphabet B = Alphabet::from_generators(gens);
  auto label = std::make_shared<std::vector<Word>>();
  for (std::size_t i = 0; i < firsts.size(); ++i) {
    label->push_back(words[firsts[i]]);
    label->push_back(words[static_cast<std::size_t>(partner[firsts[i]])]);
  }
  const LazyInverseGraph G = as_lazy_graph(sys);

  // Shallowest occurrence of each type.
  std::map<int, std::vector<int>> path_of{{sys.root_type(), {}}};
  std::deque<int> queue{sys.root_type()};
  while (!queue.empty()) {
    int t = queue.front();
    queue.pop_front();
    const auto& ch = sys.type(t).children;
    for (std::size_t j = 0; j < ch.size(); ++j) {
      if (path_of.count(ch[j])) continue;
      auto p = path_of.at(t);
      p.push_back(static_cast<int>(j));
      path_of.emplace(ch[j], std::move(p));
      queue.push_back(ch[j]);
    }
  }
  std::vector<SubgroupComponent> out;
  std::set<VertexAddress> taken;
  for (const auto& [t, path] : path_of) {
    std::map<VertexAddress, int> dist;
    std::deque<VertexAddress> q;
    for (int f = 0; f < static_cast<int>(sys.type(t).frontier.size()); ++f) {
      VertexAddress x{path, f};
      dist.emplace(x, 0);
      q.push_back(x);
    }
    std::vector<VertexAddress> found;
    while (!q.empty()) {
      VertexAddress x = q.front();
      q.pop_front();
      found.push_back(x);
      if (dist.at(x) >= n) continue;
      for (Letter a = 0; a < A.size(); ++a) {
        auto y = neighbor_address(sys, x, a);
        if (!y || y->slots.size() < path.size() ||
            !std::equal(path.begin(), path.end(), y->slots.begin())) {
          continue;
        }
        if (dist.emplace(*y, dist.at(x) + 1).second) q.push_back(*y);
      }
    }
    for (const auto& x : found) {
      if (!taken.insert(x).second) continue;
      LazyInverseGraph comp(
          B, address_key(sys, x),
          [G, label](const VertexKey& v, Letter b) { return walk(G, v, (*label)[b]); },
          G.complete());
      out.push_back({t, x, std::move(comp)});
    }
  }
  return out;
}

}  // namespace cftg
