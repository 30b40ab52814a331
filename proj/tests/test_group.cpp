// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "cftg/error.hpp"
#include "cftg/examples.hpp"
#include "cftg/group.hpp"
#include "support.hpp"

using namespace cftg;
using cftg::testing::oracle_fixes_ball;
using cftg::testing::random_word;

TEST_CASE("omega relations") {
  Ensemble e(omega_system());
  const Alphabet& A = e.alphabet();
  for (const char* w : {"c c", "a b a' b'", "c a c' b'", "1"}) {
    CAPTURE(w);
    CHECK(is_identity(e, A.parse_word(w)).identity);
  }
  for (const char* w : {"a", "b", "c", "a b"}) {
    CAPTURE(w);
    auto r = is_identity(e, A.parse_word(w));
    CHECK_FALSE(r.identity);
    REQUIRE(r.witness);
  }
}

TEST_CASE("act follows neighbors and inverts") {
  Ensemble e(omega_system());
  const Alphabet& A = e.alphabet();
  const EndConeSystem& s = e[0];
  auto x = act(e, 0, root_address(s), A.parse_word("a b a' b'"));
  REQUIRE(x);
  CHECK(*x == root_address(s));
  std::mt19937_64 rng(5);
  auto g = as_lazy_graph(s);
  FiniteGraph ball = expand_ball(g, g.root(), 4);
  for (int i = 0; i < 200; ++i) {
    VertexAddress v = parse_address(s, ball.vertices[rng() % ball.vertices.size()]);
    Word w = random_word(A, rng, 8);
    auto y = act(e, 0, v, w);
    REQUIRE(y);
    CHECK(act(e, 0, *y, A.inverse(w)) == v);
    CHECK(address_key(s, *y) == walk(g, address_key(s, v), w));
  }
  CHECK_THROWS_AS(act(e, 0, root_address(s), {17}), InputError);
}

TEST_CASE("is_identity agrees with the closed-form actions") {
  std::mt19937_64 rng(17);
  for (const char* name : {"omega", "comb", "torsion", "line", "cycle5", "free2"}) {
    CAPTURE(name);
    auto o = *example(name);
    Ensemble e(example_system(name));
    const EndConeSystem& s = e[0];
    int deepest = 0;
    for (int d : s.first_depth()) deepest = std::max(deepest, d);
    for (int i = 0; i < 80; ++i) {
      Word w = random_word(e.alphabet(), rng, 8);
      const bool expect = oracle_fixes_ball(o, w, static_cast<int>(w.size()) + deepest + 1);
      CAPTURE(e.alphabet().format(w));
      CHECK(is_identity(e, w).identity == expect);
    }
  }
}

TEST_CASE("normality and subgroup laws") {
  Ensemble e(omega_system());
  const Alphabet& A = e.alphabet();
  std::mt19937_64 rng(23);
  std::vector<Word> ids = {A.parse_word("c c"), A.parse_word("a b a' b'"),
                           A.parse_word("c a c' b'")};
  for (int i = 0; i < 60; ++i) {
    const Word& u = ids[rng() % ids.size()];
    const Word& v = ids[rng() % ids.size()];
    Word x = random_word(A, rng, 5);
    CHECK(is_identity(e, concat(u, v)).identity);
    CHECK(is_identity(e, A.inverse(u)).identity);
    CHECK(is_identity(e, concat(concat(A.inverse(x), u), x)).identity);
  }
  for (int i = 0; i < 60; ++i) {
    Word w = random_word(A, rng, 7);
    const bool id = is_identity(e, w).identity;
    for (const auto& s : cyclic_shifts(w)) CHECK(is_identity(e, s).identity == id);
  }
}

TEST_CASE("ensemble law") {
  Alphabet ab = Alphabet::from_generators({"a", "b"});
  Ensemble both = disjoint_union({line_system("a"), line_system("b")});
  CHECK(is_identity(both, ab.parse_word("a b a' b'")).identity);
  CHECK_FALSE(is_identity(both, ab.parse_word("a")).identity);
  Ensemble mixed = disjoint_union({cycle5_system(), pad(line_system("b"), Alphabet::from_generators({"a", "b"}))});
  const Alphabet& A = mixed.alphabet();
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    Word w = random_word(A, rng, 10);
    const bool all = is_identity(Ensemble(mixed[0]), w).identity &&
                     is_identity(Ensemble(mixed[1]), w).identity;
    CHECK(is_identity(mixed, w).identity == all);
  }
  CHECK(is_identity(mixed, A.parse_word("a^5")).identity);
}

TEST_CASE("constants and torsion bounds") {
  Constants c = constants(Ensemble(line_system()));
  CHECK(c.types == 3);
  CHECK(c.frontier == 1);
  CHECK(c.children == 2);
  TorsionBound lb = torsion_bound(Ensemble(line_system()), {0});
  CHECK(lb.raw == 8);
  TorsionBound cb = torsion_bound(Ensemble(cycle5_system()), {0});
  CHECK(cb.raw == 2);
  CHECK(cb.per_circuit == 8);
  CHECK(cb.order_cap == 840);
  TorsionBound big = torsion_bound(Ensemble(omega_system()), Word(12, 0));
  CHECK(big.exceeds_u64);
}

TEST_CASE("orders") {
  Ensemble om(omega_system());
  auto c = order(om, om.alphabet().parse_word("c"), 100);
  CHECK(c.kind == OrderResult::Kind::kFinite);
  CHECK(c.order == 2);
  auto a = order(om, om.alphabet().parse_word("a"), 100);
  CHECK(a.kind == OrderResult::Kind::kInfinite);
  REQUIRE(a.certificate);
  CHECK(a.certificate->to_depth > a.certificate->from_depth);

  Ensemble c5(cycle5_system());
  auto o5 = order(c5, {0}, 100);
  CHECK(o5.kind == OrderResult::Kind::kFinite);
  CHECK(o5.order == 5);
  CHECK(o5.order <= torsion_bound(c5, {0}).order_cap);

  Ensemble t(example_system("torsion"));
  const Alphabet& T = t.alphabet();
  CHECK(order(t, T.parse_word("c' a c"), 100).order == 2);
  CHECK(order(t, T.parse_word("a"), 100).order == 2);
  CHECK(order(t, T.parse_word("c"), 100).kind == OrderResult::Kind::kInfinite);

  Ensemble cb(example_system("comb"));
  CHECK(order(cb, cb.alphabet().parse_word("c a c'"), 100).kind == OrderResult::Kind::kInfinite);
  CHECK(order(Ensemble(line_system()), {0}, 100).kind == OrderResult::Kind::kInfinite);
  CHECK(order(om, {}, 10).order == 1);
}

TEST_CASE("order results are consistent with is_identity") {
  Ensemble om(omega_system());
  const Alphabet& A = om.alphabet();
  std::mt19937_64 rng(41);
  for (int i = 0; i < 40; ++i) {
    Word g = random_word(A, rng, 5);
    auto r = order(om, g, 64);
    CAPTURE(A.format(g));
    if (r.kind == OrderResult::Kind::kFinite) {
      CHECK(is_identity(om, power(A, g, static_cast<long>(r.order))).identity);
      for (std::uint64_t m = 1; m < r.order; ++m) {
        CHECK_FALSE(is_identity(om, power(A, g, static_cast<long>(m))).identity);
      }
    } else if (r.kind == OrderResult::Kind::kInfinite) {
      for (long k = 1; k <= 20; ++k) CHECK_FALSE(is_identity(om, power(A, g, k)).identity);
    }
  }
}

TEST_CASE("finiteness") {
  auto f = is_finite_group(Ensemble(cycle5_system()));
  CHECK(f.kind == FinitenessResult::Kind::kFinite);
  CHECK(f.vertices == 5);
  auto l = is_finite_group(Ensemble(line_system()));
  CHECK(l.kind == FinitenessResult::Kind::kInfinite);
  CHECK_FALSE(l.cycle.empty());
  CHECK(is_finite_group(Ensemble(omega_system())).kind == FinitenessResult::Kind::kInfinite);
  CHECK(is_finite_group(Ensemble(loop_system({"a"}))).vertices == 1);
}
