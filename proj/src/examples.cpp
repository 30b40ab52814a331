// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#include "cftg/examples.hpp"

#include <cstdio>
#include <map>
#include <mutex>

#include "cftg/error.hpp"
#include "cftg/inference.hpp"
#include "cftg/product.hpp"

namespace cftg {
namespace {

long parse_long(const std::string& s) {
  std::size_t used = 0;
  long x = std::stol(s, &used);
  if (used != s.size()) throw InputError("bad integer key '" + s + "'");
  return x;
}

// "z(i,j)" keys.
std::string z_key(long i, long j) {
  return "z(" + std::to_string(i) + "," + std::to_string(j) + ")";
}
std::pair<long, long> parse_z(const std::string& k) {
  long i = 0, j = 0;
  char tail = 0;
  if (std::sscanf(k.c_str(), "z(%ld,%ld%c", &i, &j, &tail) != 3 || tail != ')' ||
      z_key(i, j) != k) {
    throw InputError("bad vertex key '" + k + "'");
  }
  return {i, j};
}

// Maximal runs of one generator: (generator index, signed exponent).
std::vector<std::pair<int, long>> blocks(const Alphabet& A, const Word& w) {
  std::vector<std::pair<int, long>> out;
  for (Letter a : w) {
    const int g = a / 2;
    const long e = A.is_positive(a) ? 1 : -1;
    if (!out.empty() && out.back().first == g) {
      out.back().second += e;
      if (out.back().second == 0) out.pop_back();
    } else {
      out.push_back({g, e});
    }
  }
  return out;
}

Word unblock(const std::vector<std::pair<int, long>>& bs) {
  Word w;
  for (auto [g, e] : bs) {
    const Letter l = static_cast<Letter>(2 * g + (e > 0 ? 0 : 1));
    for (long k = 0; k < (e > 0 ? e : -e); ++k) w.push_back(l);
  }
  return w;
}

std::string word_key(const Alphabet& A, const Word& w) { return A.format(w); }

Word parse_key_word(const Alphabet& A, const VertexKey& k) {
  Word w = A.parse_word(k);
  if (!A.is_reduced(w) || A.format(w) != k) throw InputError("bad vertex key '" + k + "'");
  return w;
}

}  // namespace

OracleGraph omega() {
  Alphabet A = Alphabet::from_generators({"a", "b", "c"});
  auto parse = [](const VertexKey& k) -> std::pair<long, int> {
    if (k.size() < 2 || (k[0] != 'p' && k[0] != 'q')) throw InputError("bad vertex key '" + k + "'");
    return {parse_long(k.substr(1)), k[0] == 'q' ? 1 : 0};
  };
  auto key = [](long x, int y) { return (y ? "q" : "p") + std::to_string(x); };
  LazyInverseGraph g(
      A, "p0",
      [parse, key](const VertexKey& k, Letter l) -> std::optional<VertexKey> {
        auto [x, y] = parse(k);
        const long e = (l % 2 == 0) ? 1 : -1;
        switch (l / 2) {
          case 0: return key(y == 0 ? x + e : x, y);
          case 1: return key(y == 1 ? x + e : x, y);
          default: return key(x, 1 - y);
        }
      },
      true);
  auto act = [parse, key](const VertexKey& k, const Word& w) {
    // Normal form a^n b^m c^j using ca = bc and cb = ac.
    long n = 0, m = 0;
    int j = 0;
    for (Letter l : w) {
      const long e = (l % 2 == 0) ? 1 : -1;
      switch (l / 2) {
        case 0: (j ? m : n) += e; break;
        case 1: (j ? n : m) += e; break;
        default: j ^= 1;
      }
    }
    auto [x, y] = parse(k);
    return key(x + y * m + (1 - y) * n, (y + j) % 2);
  };
  return {"omega", "ladder of an a-line and a b-line joined by c", g, act};
}

OracleGraph antenna() {
  Alphabet A = Alphabet::from_generators({"a", "b", "c"});
  enum { kA = 0, kB = 1, kC = 2 };
  LazyInverseGraph g(
      A, "1",
      [A](const VertexKey& k, Letter x) -> std::optional<VertexKey> {
        Word w = parse_key_word(A, k);
        const int gx = x / 2;
        auto push = [&] {
          w.push_back(x);
          return word_key(A, w);
        };
        if (w.empty()) return gx == kA ? k : push();
        const Letter l = w.back();
        if (l / 2 == gx) {
          if (x == A.inverse(l)) {
            w.pop_back();
            return word_key(A, w);
          }
          return push();
        }
        if (l / 2 == kC) {
          // Positive c-vertices carry an a-line, negative ones a b-line.
          const bool positive = A.is_positive(l);
          return (gx == kA) == positive ? push() : k;
        }
        return gx == kC ? push() : k;
      },
      true);
  auto act = [A](const VertexKey& k, const Word& u) {
    auto v = blocks(A, parse_key_word(A, k));
    for (auto [x, t] : blocks(A, u)) {
      if (v.empty()) {
        if (x != kA) v.push_back({x, t});
        continue;
      }
      auto& [y, s] = v.back();
      if (y == x) {
        s += t;
        if (s == 0) v.pop_back();
      } else if (y == kC) {
        if ((x == kB && s <= 0) || (x == kA && s >= 0)) v.push_back({x, t});
      } else if (x == kC) {
        v.push_back({x, t});
      }
    }
    return word_key(A, unblock(v));
  };
  return {"antenna", "c-line with a-lines and b-lines glued alternately", g, act};
}

OracleGraph comb() {
  Alphabet A = Alphabet::from_generators({"a", "c"});
  LazyInverseGraph g(
      A, z_key(0, 0),
      [](const VertexKey& k, Letter l) -> std::optional<VertexKey> {
        auto [i, j] = parse_z(k);
        const long e = (l % 2 == 0) ? 1 : -1;
        if (l / 2 == 1) return z_key(i + e, j);
        return i == 0 ? z_key(i, j + e) : k;
      },
      true);
  auto act = [A](const VertexKey& k, const Word& u) {
    auto [i, j] = parse_z(k);
    for (auto [x, t] : blocks(A, u)) {
      if (x == 1) {
        i += t;
      } else if (i == 0) {
        j += t;
      }
    }
    return z_key(i, j);
  };
  return {"comb", "copies of a c-line hung on an a-line", g, act};
}

OracleGraph torsion_graph() {
  Alphabet A = Alphabet::from_generators({"a", "c"});
  LazyInverseGraph g(
      A, z_key(0, 0),
      [](const VertexKey& k, Letter l) -> std::optional<VertexKey> {
        auto [i, j] = parse_z(k);
        if (j != 0 && j != 1) throw InputError("bad vertex key '" + k + "'");
        const long e = (l % 2 == 0) ? 1 : -1;
        if (l / 2 == 1) return z_key(i + e, j);
        return i == 0 ? z_key(i, 1 - j) : k;
      },
      true);
  auto act = [](const VertexKey& k, const Word& u) {
    // Final level from the c-count; the line flips once per a-letter read
    // while at level 0.
    auto [i, j] = parse_z(k);
    long level = i;
    long crossings = 0;
    for (Letter l : u) {
      if (l / 2 == 1) {
        level += (l % 2 == 0) ? 1 : -1;
      } else if (level == 0) {
        ++crossings;
      }
    }
    return z_key(level, (j + crossings) % 2);
  };
  return {"torsion", "two c-lines joined by one a-bridge, a-loops elsewhere", g, act};
}

OracleGraph line(const std::string& letter) {
  Alphabet A = Alphabet::from_generators({letter});
  LazyInverseGraph g(
      A, "0",
      [](const VertexKey& k, Letter l) -> std::optional<VertexKey> {
        return std::to_string(parse_long(k) + (l == 0 ? 1 : -1));
      },
      true);
  auto act = [](const VertexKey& k, const Word& u) {
    long x = parse_long(k);
    for (Letter l : u) x += l == 0 ? 1 : -1;
    return std::to_string(x);
  };
  return {"line", "bi-infinite " + letter + "-line", g, act};
}

OracleGraph cycle(const std::string& letter, int n) {
  if (n < 1) throw InputError("cycle length must be positive");
  Alphabet A = Alphabet::from_generators({letter});
  auto norm = [n](long x) { return ((x % n) + n) % n; };
  auto check = [norm](const VertexKey& k) {
    long x = parse_long(k);
    if (norm(x) != x) throw InputError("bad vertex key '" + k + "'");
    return x;
  };
  LazyInverseGraph g(
      A, "0",
      [norm, check](const VertexKey& k, Letter l) -> std::optional<VertexKey> {
        return std::to_string(norm(check(k) + (l == 0 ? 1 : -1)));
      },
      true);
  auto act = [norm, check](const VertexKey& k, const Word& u) {
    long s = 0;
    for (Letter l : u) s += l == 0 ? 1 : -1;
    return std::to_string(norm(check(k) + s));
  };
  return {"cycle" + std::to_string(n), "cycle of length " + std::to_string(n), g, act};
}

OracleGraph loop_vertex(const std::vector<std::string>& letters) {
  Alphabet A = Alphabet::from_generators(letters);
  LazyInverseGraph g(
      A, "o",
      [](const VertexKey& k, Letter) -> std::optional<VertexKey> {
        if (k != "o") throw InputError("bad vertex key '" + k + "'");
        return k;
      },
      true);
  auto act = [](const VertexKey& k, const Word&) { return k; };
  return {"loop", "one vertex with a loop for every letter", g, act};
}

OracleGraph free_tree(const std::vector<std::string>& generators) {
  Alphabet A = Alphabet::from_generators(generators);
  LazyInverseGraph g(
      A, "1",
      [A](const VertexKey& k, Letter l) -> std::optional<VertexKey> {
        Word w = parse_key_word(A, k);
        if (!w.empty() && w.back() == A.inverse(l)) {
          w.pop_back();
        } else {
          w.push_back(l);
        }
        return word_key(A, w);
      },
      true);
  auto act = [A](const VertexKey& k, const Word& u) {
    return word_key(A, A.reduce(concat(parse_key_word(A, k), u)));
  };
  return {"free" + std::to_string(generators.size()), "free tree", g, act};
}

OracleGraph counter_graph() {
  InversePDA m = signed_counter_pda();
  auto to_int = [m](const VertexKey& k) {
    auto c = m.parse_key(k);
    const long h = static_cast<long>(c.stack.size()) - 1;
    return c.state == 2 ? -h : h;
  };
  auto from_int = [m](long x) {
    InversePDA::Config c{0, {0}};
    if (x != 0) {
      c.state = x > 0 ? 1 : 2;
      c.stack.push_back(1);
      for (long i = 1; i < (x > 0 ? x : -x); ++i) c.stack.push_back(2);
    }
    return m.key(c);
  };
  auto act = [to_int, from_int](const VertexKey& k, const Word& u) {
    long x = to_int(k);
    for (Letter l : u) x += l == 0 ? 1 : -1;
    return from_int(x);
  };
  return {"counter", "configuration graph of the signed counter machine", config_graph(m), act};
}

LazyInverseGraph antenna_product() {
  Alphabet ab = Alphabet::from_generators({"a", "b"});
  ProductSide left{{line("c").graph, [](const VertexKey& k) { return parse_long(k) < 0 ? 0 : 1; }}};
  ProductSide right{{pad(line("b").graph, ab), [](const VertexKey&) { return 0; }},
                    {pad(line("a").graph, ab), [](const VertexKey&) { return 0; }}};
  return free_product(left, right, Alphabet::from_generators({"a", "b", "c"}));
}

LazyInverseGraph comb_product() {
  ProductSide left{{line("c").graph, [](const VertexKey&) { return 1; }}};
  ProductSide right{{line("a").graph, [](const VertexKey&) { return 0; }},
                    {loop_vertex({"a"}).graph, [](const VertexKey&) { return 0; }}};
  return free_product(left, right, Alphabet::from_generators({"a", "c"}));
}

LazyInverseGraph torsion_product() {
  ProductSide left{{line("c").graph, [](const VertexKey&) { return 1; }}};
  ProductSide right{{cycle("a", 2).graph, [](const VertexKey&) { return 0; }},
                    {loop_vertex({"a"}).graph, [](const VertexKey&) { return 0; }}};
  return free_product(left, right, Alphabet::from_generators({"a", "c"}));
}

EndConeSystem line_system(const std::string& letter) {
  Alphabet A = Alphabet::from_generators({letter});
  const Letter a = 0, ai = 1;
  std::vector<ConeType> types(3);
  types[0] = {"root", {"x0"}, {}, {1, 2}, {{0, a, 0, 0}, {0, ai, 1, 0}}};
  types[1] = {"right", {"w"}, {}, {1}, {{0, a, 0, 0}}};
  types[2] = {"left", {"w"}, {}, {2}, {{0, ai, 0, 0}}};
  return EndConeSystem(A, types, 0);
}

EndConeSystem cycle5_system() {
  Alphabet A = Alphabet::from_generators({"a"});
  const Letter a = 0, ai = 1;
  std::vector<ConeType> types(3);
  // Levels {0}, {1, 4}, {2, 3}.
  types[0] = {"root", {"x0"}, {}, {1}, {{0, a, 0, 0}, {0, ai, 0, 1}}};
  types[1] = {"level1", {"v1", "v4"}, {}, {2}, {{0, a, 0, 0}, {1, ai, 0, 1}}};
  types[2] = {"level2", {"v2", "v3"}, {{0, a, 1}, {1, ai, 0}}, {}, {}};
  return EndConeSystem(A, types, 0);
}

EndConeSystem omega_system() {
  Alphabet A = Alphabet::from_generators({"a", "b", "c"});
  const Letter a = 0, ai = 1, b = 2, bi = 3, c = 4, ci = 5;
  std::vector<ConeType> types(4);
  types[0] = {"root", {"x0"}, {{0, b, 0}, {0, bi, 0}}, {1},
              {{0, a, 0, 0}, {0, ai, 0, 1}, {0, c, 0, 2}, {0, ci, 0, 2}}};
  // Sphere 1: p1, p-1, q0; its cone splits into a right and a left end.
  types[1] = {"level1",
              {"p1", "p-1", "q0"},
              {{0, b, 0}, {0, bi, 0}, {1, b, 1}, {1, bi, 1}, {2, a, 2}, {2, ai, 2}},
              {2, 3},
              {{0, a, 0, 0}, {0, c, 0, 1}, {0, ci, 0, 1}, {2, b, 0, 1},
               {1, ai, 1, 0}, {1, c, 1, 1}, {1, ci, 1, 1}, {2, bi, 1, 1}}};
  // Sphere n >= 2 on one side: p_n and q_{n-1}.
  types[2] = {"right", {"p", "q"}, {{0, b, 0}, {0, bi, 0}, {1, a, 1}, {1, ai, 1}}, {2},
              {{0, a, 0, 0}, {0, c, 0, 1}, {0, ci, 0, 1}, {1, b, 0, 1}}};
  types[3] = {"left", {"p", "q"}, {{0, b, 0}, {0, bi, 0}, {1, a, 1}, {1, ai, 1}}, {3},
              {{0, ai, 0, 0}, {0, c, 0, 1}, {0, ci, 0, 1}, {1, bi, 0, 1}}};
  return EndConeSystem(A, types, 0);
}

EndConeSystem free_tree_system(const std::vector<std::string>& generators) {
  Alphabet A = Alphabet::from_generators(generators);
  const int k = static_cast<int>(A.size());
  std::vector<ConeType> types(static_cast<std::size_t>(k) + 1);
  types[0].name = "root";
  types[0].frontier = {"x0"};
  for (Letter l = 0; l < k; ++l) {
    types[0].children.push_back(l + 1);
    types[0].cross_edges.push_back({0, l, static_cast<int>(l), 0});
    ConeType& t = types[static_cast<std::size_t>(l) + 1];
    t.name = "after-" + A.name(l);
    t.frontier = {"w"};
    for (Letter m = 0; m < k; ++m) {
      if (m == A.inverse(l)) continue;
      t.cross_edges.push_back({0, m, static_cast<int>(t.children.size()), 0});
      t.children.push_back(m + 1);
    }
  }
  return EndConeSystem(A, types, 0);
}

EndConeSystem loop_system(const std::vector<std::string>& letters) {
  Alphabet A = Alphabet::from_generators(letters);
  ConeType t{"root", {"x0"}, {}, {}, {}};
  for (Letter l = 0; l < A.size(); ++l) t.internal_edges.push_back({0, l, 0});
  return EndConeSystem(A, {t}, 0);
}

std::vector<std::string> example_names() {
  return {"omega", "antenna", "comb", "torsion", "line", "cycle5", "free2", "loop", "counter"};
}

std::optional<OracleGraph> example(const std::string& name) {
  if (name == "omega") return omega();
  if (name == "antenna") return antenna();
  if (name == "comb") return comb();
  if (name == "torsion") return torsion_graph();
  if (name == "line") return line("a");
  if (name == "cycle5") return cycle("a", 5);
  if (name == "free2") return free_tree({"a", "b"});
  if (name == "loop") return loop_vertex({"a"});
  if (name == "counter") return counter_graph();
  return std::nullopt;
}

EndConeSystem example_system(const std::string& name) {
  if (name == "omega") return omega_system();
  if (name == "line") return line_system("a");
  if (name == "cycle5") return cycle5_system();
  if (name == "free2") return free_tree_system({"a", "b"});
  if (name == "loop") return loop_system({"a"});
  // Probe radius and stabilization depth that are known to stabilize.
  static const std::map<std::string, std::pair<int, int>> kInferred = {
      {"antenna", {9, 3}}, {"comb", {8, 3}}, {"torsion", {8, 3}}, {"counter", {7, 2}}};
  auto it = kInferred.find(name);
  if (it == kInferred.end()) throw InputError("unknown example '" + name + "'");
  static std::mutex mu;
  static std::map<std::string, EndConeSystem> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto c = cache.find(name); c != cache.end()) return c->second;
  auto r = infer_system(example(name)->graph, it->second.first, it->second.second);
  if (auto* nst = std::get_if<NotStabilized>(&r)) {
    throw DomainError("inference for '" + name + "' did not stabilize: " + nst->reason);
  }
  return cache.emplace(name, std::get<EndConeSystem>(r)).first->second;
}

Ensemble torsion_companion() {
  Alphabet A = Alphabet::from_generators({"a", "c"});
  EndConeSystem lane = pad(line_system("c"), A);
  return Ensemble({lane, lane});
}

}  // namespace cftg
