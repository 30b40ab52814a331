// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "cftg/error.hpp"
#include "cftg/examples.hpp"
#include "cftg/group.hpp"
#include "cftg/product.hpp"

using namespace cftg;

namespace {

bool starts_with(const std::string& s, const std::string& p) {
  return s.size() >= p.size() && s.compare(0, p.size(), p) == 0;
}

}  // namespace

TEST_CASE("product keys") {
  std::vector<ProductEntry> e = {{0, 0, "3"}, {1, 1, "-2"}, {0, 2, "x[1]"}};
  VertexKey k = product_key(e);
  CHECK(k == "1:0[3]2:1[-2]1:2[x[1]]");
  auto back = parse_product_key(k);
  REQUIRE(back.size() == 3);
  CHECK(back[2].key == "x[1]");
  CHECK(back[1].side == 1);
  CHECK(product_key({}) == "o");
  CHECK(parse_product_key("o").empty());
  CHECK_THROWS_AS(parse_product_key("3:0[1]"), InputError);
  CHECK_THROWS_AS(parse_product_key("1:0[1"), InputError);
}

TEST_CASE("gluing rules") {
  GluingRule r;
  r.default_target = 2;
  r.exceptions["5"] = 7;
  r.ranges.push_back({std::nullopt, -1, 0});
  r.ranges.push_back({1, 10, 1});
  GluingMap m = r.as_map();
  CHECK(m("-4") == 0);
  CHECK(m("3") == 1);
  CHECK(m("5") == 7);
  CHECK(m("11") == 2);
  CHECK(m("p0") == 2);
}

TEST_CASE("comb and antenna actions") {
  LazyInverseGraph cb = comb_product();
  const Alphabet& C = cb.alphabet();
  CHECK(walk(cb, "o", C.parse_word("c")) == "1:0[1]");
  CHECK(walk(cb, "o", C.parse_word("c a")) == "1:0[1]");
  CHECK(walk(cb, "o", C.parse_word("a c")) == "2:0[1]1:0[1]");
  LazyInverseGraph an = antenna_product();
  const Alphabet& A = an.alphabet();
  CHECK(walk(an, "o", A.parse_word("a^3")) == "o");
  CHECK(walk(an, "o", A.parse_word("a'")) == "o");
  auto w = walk(an, "o", A.parse_word("b c^2"));
  REQUIRE(w);
  CHECK(an.neighbor(*w, A.letter("b")) == *w);
  CHECK(an.neighbor(*w, A.letter("a")) != *w);
  auto v = walk(an, "o", A.parse_word("c'"));
  CHECK(an.neighbor(*v, A.letter("a")) == *v);
}

TEST_CASE("products match the closed-form graphs") {
  struct Case {
    LazyInverseGraph product;
    OracleGraph oracle;
  };
  for (auto& c : {Case{antenna_product(), antenna()}, Case{comb_product(), comb()},
                  Case{torsion_product(), torsion_graph()}}) {
    CAPTURE(c.oracle.name);
    CHECK(compare_balls(c.product, "o", c.oracle.graph, c.oracle.graph.root(), 6).isomorphic);
    CHECK_FALSE(check_involutive(c.product, "o", 6));
  }
}

TEST_CASE("geodesics stay in out-cones") {
  for (const auto& g : {comb_product(), antenna_product(), torsion_product()}) {
    FiniteGraph b = expand_ball(g, "o", 6);
    for (std::size_t w = 0; w < b.vertices.size(); ++w) {
      auto entries = parse_product_key(b.vertices[w]);
      // Every proper prefix of the key is an out-cone containing w; each
      // BFS parent of w stays in it or is its apex.
      std::vector<std::size_t> parents;
      for (const auto& e : b.edges) {
        if (e.to == w && b.distance[e.from] + 1 == b.distance[w]) parents.push_back(e.from);
      }
      for (std::size_t n = 1; n < entries.size(); ++n) {
        const VertexKey apex = product_key({entries.begin(), entries.begin() + static_cast<long>(n)});
        for (std::size_t p : parents) {
          CHECK((b.vertices[p] == apex || starts_with(b.vertices[p], apex)));
        }
      }
    }
  }
}

TEST_CASE("construction errors") {
  ProductSide l{{line("a").graph, [](const VertexKey&) { return 0; }}};
  ProductSide r{{line("a").graph, [](const VertexKey&) { return 0; }}};
  CHECK_THROWS_AS(free_product(l, r), InputError);
  CHECK_THROWS_AS(free_product(l, {}), InputError);
  ProductSide b{{line("b").graph, [](const VertexKey&) { return 0; }}};
  CHECK_THROWS_AS(free_product(l, b, Alphabet::from_generators({"a", "c"})), InputError);
  LazyInverseGraph ab = free_product(l, b);
  // Two lines glued freely: the 4-regular tree.
  CHECK(sphere_size(ab, "o", 3) == 36);
}

TEST_CASE("padding and unions") {
  Alphabet ab = Alphabet::from_generators({"a", "b"});
  LazyInverseGraph p = pad(line("a").graph, ab);
  FiniteGraph ball = expand_ball(p, "0", 3);
  for (const auto& v : ball.vertices) {
    CHECK(p.neighbor(v, ab.letter("b")) == v);
    CHECK(p.neighbor(v, ab.letter("b'")) == v);
  }
  Ensemble z2 = disjoint_union({line_system("a"), line_system("b")});
  CHECK(is_identity(z2, ab.parse_word("a b a' b'")).identity);
  CHECK_FALSE(is_identity(z2, ab.parse_word("a")).identity);
  Ensemble one = disjoint_union({omega_system()});
  CHECK(one.size() == 1);
  CHECK(is_identity(one, one.alphabet().parse_word("c c")).identity);
}

TEST_CASE("inflated graphs") {
  Alphabet A = Alphabet::from_generators({"a"});
  LazyInverseGraph L = line("a").graph;
  SchreierAutomaton triv{Alphabet::from_generators({"y"}), {"1"}, {{0, 0, {0}, 0}, {0, 1, {1}, 0}}};
  LazyInverseGraph t1 = inflated_graph(L, triv);
  CHECK(t1.root() == "1@0");
  CHECK(expand_ball(t1, t1.root(), 4).vertices.size() == 9);
  CHECK(check_involutive(t1, t1.root(), 4) == std::nullopt);

  // Two sheets swapped by t with empty output: t has order 2.
  SchreierAutomaton sheets{Alphabet::from_generators({"t"}), {"1", "s"},
                           {{0, 0, {}, 1}, {1, 0, {}, 0}, {0, 1, {}, 1}, {1, 1, {}, 0}}};
  LazyInverseGraph t2 = inflated_graph(L, sheets);
  CHECK(expand_ball(t2, t2.root(), 5).vertices.size() == 2);
  CHECK(walk(t2, t2.root(), t2.alphabet().parse_word("t t")) == t2.root());

  // Output of length 2 crosses two edges.
  SchreierAutomaton twice{Alphabet::from_generators({"y"}), {"1"}, {{0, 0, {0, 0}, 0}, {0, 1, {1, 1}, 0}}};
  LazyInverseGraph t3 = inflated_graph(L, twice);
  CHECK(t3.neighbor(t3.root(), 0) == "1@2");
  CHECK(walk(t3, "1@1", {1, 1, 1}) == "1@-5");

  SchreierAutomaton broken{Alphabet::from_generators({"y"}), {"1"}, {{0, 0, {0}, 0}, {0, 1, {0}, 0}}};
  CHECK_THROWS_AS(inflated_graph(L, broken), InputError);
  SchreierAutomaton dup{Alphabet::from_generators({"y"}), {"1"}, {{0, 0, {0}, 0}, {0, 0, {1}, 0}}};
  CHECK_THROWS_AS(validate_automaton(dup, A), InputError);
}

TEST_CASE("subgroup graphs") {
  Alphabet A = Alphabet::from_generators({"a"});
  auto parts = subgroup_graphs(line_system(), {A.parse_word("a a"), A.parse_word("a' a'")}, 2);
  REQUIRE_FALSE(parts.empty());
  for (const auto& c : parts) {
    auto s = sphere_sizes(c.graph, c.graph.root(), 4);
    for (std::size_t n = 1; n < s.size(); ++n) CHECK(s[n] == 2);
  }
  Alphabet O = omega_system().alphabet();
  auto cs = subgroup_graphs(omega_system(), {O.parse_word("c"), O.parse_word("c'")}, 1);
  for (const auto& c : cs) CHECK(expand_ball(c.graph, c.graph.root(), 3).vertices.size() == 2);
  CHECK_THROWS_AS(subgroup_graphs(line_system(), {A.parse_word("a a")}, 2), InputError);

  // B = A: the components are the original graph seen from cone vertices.
  auto same = subgroup_graphs(omega_system(), {O.parse_word("a"), O.parse_word("a'"), O.parse_word("b"),
                                               O.parse_word("b'"), O.parse_word("c"), O.parse_word("c'")},
                              1, {"a", "b", "c"});
  auto g = as_lazy_graph(omega_system());
  for (const auto& c : same) {
    CHECK(compare_balls(c.graph, c.graph.root(), g, address_key(omega_system(), c.vertex), 4).isomorphic);
  }
}
