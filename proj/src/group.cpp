// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#include "cftg/group.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "cftg/error.hpp"

namespace cftg {

bool ConeWalker::step(Letter a) {
  const auto& m = sys_->move(types_.back(), vertex_, a);
  switch (m.kind) {
    case EndConeSystem::MoveKind::kInternal:
      vertex_ = m.target;
      return true;
    case EndConeSystem::MoveKind::kCross:
      slots_.push_back(m.slot);
      types_.push_back(sys_->type(types_.back()).children[static_cast<std::size_t>(m.slot)]);
      vertex_ = m.target;
      return true;
    case EndConeSystem::MoveKind::kExit: {
      if (slots_.empty()) return false;
      const int parent = types_[types_.size() - 2];
      const int u = sys_->exit_target(parent, slots_.back(), vertex_, a);
      if (u < 0) return false;
      slots_.pop_back();
      types_.pop_back();
      vertex_ = u;
      return true;
    }
    case EndConeSystem::MoveKind::kNone:
      break;
  }
  return false;
}

std::optional<VertexAddress> act(const Ensemble& ens, std::size_t component,
                                 const VertexAddress& x, const Word& g) {
  const EndConeSystem& sys = ens[component];
  sys.alphabet().check_word(g);
  std::optional<VertexAddress> cur = x;
  for (Letter a : g) {
    cur = neighbor_address(sys, *cur, a);
    if (!cur) return std::nullopt;
  }
  return cur;
}

namespace {

// Distinct cyclic shifts with their offsets.
std::vector<std::pair<std::size_t, Word>> shifts_of(const Word& g) {
  std::vector<std::pair<std::size_t, Word>> out;
  std::set<Word> seen;
  for (std::size_t s = 0; s < g.size(); ++s) {
    Word r;
    r.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) r.push_back(g[(s + i) % g.size()]);
    if (seen.insert(r).second) out.emplace_back(s, std::move(r));
  }
  return out;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b, bool& sat) {
  if (a != 0 && b > UINT64_MAX / a) {
    sat = true;
    return UINT64_MAX;
  }
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b, bool& sat) {
  if (b > UINT64_MAX - a) {
    sat = true;
    return UINT64_MAX;
  }
  return a + b;
}

}  // namespace

IdentityResult is_identity(const Ensemble& ens, const Word& g0) {
  const Word g = ens.alphabet().reduce(g0);
  IdentityResult out;
  if (g.empty()) return out;
  const auto shifts = shifts_of(g);
  for (std::size_t si = 0; si < ens.size(); ++si) {
    const EndConeSystem& sys = ens[si];
    const auto reachable = sys.reachable_types();
    for (int t = 0; t < sys.type_count(); ++t) {
      if (!reachable[static_cast<std::size_t>(t)]) continue;
      for (int q = 0; q < static_cast<int>(sys.type(t).frontier.size()); ++q) {
        for (const auto& [offset, word] : shifts) {
          ConeWalker w(sys, t, q);
          bool inside = true;
          for (Letter a : word) {
            if (!w.step(a)) {
              inside = false;
              break;
            }
          }
          if (!inside) continue;
          if (w.depth() != 0 || w.vertex() != q) {
            out.identity = false;
            out.witness = IdentityWitness{si, t, q, offset, {w.slots(), w.vertex()}};
            return out;
          }
        }
      }
    }
  }
  return out;
}

Constants constants(const Ensemble& ens) {
  Constants c;
  for (const auto& sys : ens.systems()) {
    c.types = std::max(c.types, sys.type_count());
    c.frontier = std::max(c.frontier, sys.max_frontier());
    c.children = std::max(c.children, sys.max_children());
  }
  return c;
}

TorsionBound torsion_bound(const Ensemble& ens, const Word& g0) {
  const Word g = ens.alphabet().reduce(g0);
  const Constants c = constants(ens);
  const std::uint64_t len = std::max<std::uint64_t>(g.size(), 1);
  const std::uint64_t levels = static_cast<std::uint64_t>(c.types) * len;
  TorsionBound tb;
  // raw = len * frontier * children^levels
  {
    bool sat = false;
    std::uint64_t p = 1;
    for (std::uint64_t j = 0; j < levels && !sat; ++j) {
      p = sat_mul(p, static_cast<std::uint64_t>(c.children), sat);
    }
    std::uint64_t r = sat_mul(sat_mul(len, static_cast<std::uint64_t>(c.frontier), sat), p, sat);
    tb.raw = sat ? UINT64_MAX : r;
    tb.raw_saturated = sat;
  }
  // per_circuit = len * frontier * sum_{j=0..levels} children^j
  {
    bool sat = false;
    std::uint64_t sum = 0;
    if (c.children == 0) {
      sum = 1;
    } else if (c.children == 1) {
      sum = levels + 1;
    } else {
      std::uint64_t p = 1;
      for (std::uint64_t j = 0; j <= levels && !sat; ++j) {
        sum = sat_add(sum, p, sat);
        if (j < levels) p = sat_mul(p, static_cast<std::uint64_t>(c.children), sat);
      }
    }
    std::uint64_t r = sat_mul(sat_mul(len, static_cast<std::uint64_t>(c.frontier), sat), sum, sat);
    tb.per_circuit = sat ? UINT64_MAX : r;
    tb.per_circuit_saturated = sat;
  }
  // order_cap = lcm(1..per_circuit)
  {
    bool sat = tb.per_circuit_saturated;
    std::uint64_t l = 1;
    for (std::uint64_t k = 2; k <= tb.per_circuit && !sat; ++k) {
      std::uint64_t gcd = std::gcd(l, k);
      l = sat_mul(l / gcd, k, sat);
    }
    tb.order_cap = sat ? UINT64_MAX : l;
    tb.exceeds_u64 = sat;
  }
  return tb;
}

namespace {

struct CertificateSearch {
  std::size_t system;
  int type;
  int vertex;
  std::size_t shift;
  const Word* word;
  ConeWalker walker;
  bool alive = true;
  std::size_t steps = 0;
  std::vector<int> depths{0};
  std::map<std::tuple<int, int, std::size_t>, std::vector<std::size_t>> seen;

  CertificateSearch(const EndConeSystem& sys, std::size_t si, int t, int q,
                    std::size_t off, const Word* w)
      : system(si), type(t), vertex(q), shift(off), word(w), walker(sys, t, q) {
    seen[{t, q, 0}].push_back(0);
  }

  std::optional<InfiniteCertificate> advance(std::size_t n) {
    for (std::size_t i = 0; i < n && alive; ++i) {
      if (!walker.step((*word)[steps % word->size()])) {
        alive = false;
        break;
      }
      ++steps;
      const int d = walker.depth();
      depths.push_back(d);
      const std::size_t phase = steps % word->size();
      auto& prior = seen[{walker.type(), walker.vertex(), phase}];
      for (auto it = prior.rbegin(); it != prior.rend(); ++it) {
        const std::size_t j = *it;
        const int dj = depths[j];
        if (dj >= d) continue;
        const int lowest = *std::min_element(depths.begin() + static_cast<long>(j), depths.end());
        if (lowest < dj) continue;
        InfiniteCertificate c;
        c.system = system;
        c.type = type;
        c.vertex = vertex;
        c.shift = shift;
        c.from_step = j;
        c.to_step = steps;
        c.color_type = walker.type();
        c.color_vertex = walker.vertex();
        c.phase = phase;
        c.from_depth = dj;
        c.to_depth = d;
        return c;
      }
      prior.push_back(steps);
    }
    return std::nullopt;
  }
};

}  // namespace

OrderResult order(const Ensemble& ens, const Word& g0, std::uint64_t max_exp) {
  const Word g = ens.alphabet().reduce(g0);
  OrderResult out;
  if (g.empty() || is_identity(ens, g).identity) {
    out.kind = OrderResult::Kind::kFinite;
    out.order = 1;
    out.searched_up_to = 1;
    return out;
  }
  const TorsionBound tb = torsion_bound(ens, g);
  const std::uint64_t cap = tb.exceeds_u64 ? max_exp : std::min(max_exp, tb.order_cap);
  const auto shifts = shifts_of(g);
  std::vector<CertificateSearch> searches;
  for (std::size_t si = 0; si < ens.size(); ++si) {
    const EndConeSystem& sys = ens[si];
    const auto reachable = sys.reachable_types();
    for (int t = 0; t < sys.type_count(); ++t) {
      if (!reachable[static_cast<std::size_t>(t)]) continue;
      for (int q = 0; q < static_cast<int>(sys.type(t).frontier.size()); ++q) {
        for (const auto& [offset, word] : shifts) {
          searches.emplace_back(sys, si, t, q, offset, &word);
        }
      }
    }
  }
  for (std::uint64_t k = 2; k <= cap; ++k) {
    out.searched_up_to = k;
    if (is_identity(ens, power(ens.alphabet(), g, static_cast<long>(k))).identity) {
      out.kind = OrderResult::Kind::kFinite;
      out.order = k;
      return out;
    }
    for (auto& s : searches) {
      if (auto c = s.advance(g.size())) {
        out.kind = OrderResult::Kind::kInfinite;
        out.certificate = c;
        return out;
      }
    }
  }
  if (!tb.exceeds_u64 && cap == tb.order_cap) {
    out.kind = OrderResult::Kind::kInfinite;
    InfiniteCertificate c;
    c.beyond_bound = true;
    out.certificate = c;
    return out;
  }
  out.kind = OrderResult::Kind::kUnknown;
  return out;
}

FinitenessResult is_finite_group(const Ensemble& ens) {
  FinitenessResult out;
  for (std::size_t si = 0; si < ens.size(); ++si) {
    const EndConeSystem& sys = ens[si];
    auto issues = validate(sys);
    if (!issues.empty()) {
      throw InputError("invalid system: " + issues.front().kind + ": " +
                       issues.front().message);
    }
    // Depth-first search for a cycle of the type graph from the root.
    std::vector<int> state(static_cast<std::size_t>(sys.type_count()), 0);
    std::vector<int> stack;
    std::vector<int> cycle;
    std::function<bool(int)> dfs = [&](int t) {
      state[static_cast<std::size_t>(t)] = 1;
      stack.push_back(t);
      for (int c : sys.type(t).children) {
        if (state[static_cast<std::size_t>(c)] == 1) {
          auto it = std::find(stack.begin(), stack.end(), c);
          cycle.assign(it, stack.end());
          cycle.push_back(c);
          return true;
        }
        if (state[static_cast<std::size_t>(c)] == 0 && dfs(c)) return true;
      }
      stack.pop_back();
      state[static_cast<std::size_t>(t)] = 2;
      return false;
    };
    if (dfs(sys.root_type())) {
      out.kind = FinitenessResult::Kind::kInfinite;
      out.system = si;
      out.cycle = std::move(cycle);
      return out;
    }
    std::vector<std::uint64_t> count(static_cast<std::size_t>(sys.type_count()), 0);
    std::vector<bool> done(count.size(), false);
    std::function<std::uint64_t(int)> size = [&](int t) -> std::uint64_t {
      if (done[static_cast<std::size_t>(t)]) return count[static_cast<std::size_t>(t)];
      std::uint64_t n = sys.type(t).frontier.size();
      for (int c : sys.type(t).children) n += size(c);
      done[static_cast<std::size_t>(t)] = true;
      return count[static_cast<std::size_t>(t)] = n;
    };
    out.vertices += size(sys.root_type());
  }
  return out;
}

}  // namespace cftg
