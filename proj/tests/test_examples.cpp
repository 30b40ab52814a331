// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "cftg/error.hpp"
#include "cftg/examples.hpp"
#include "cftg/group.hpp"
#include "support.hpp"

using namespace cftg;
using cftg::testing::commutator;
using cftg::testing::conjugate_power;
using cftg::testing::random_word;

TEST_CASE("registry") {
  auto names = example_names();
  CHECK(names.size() == 9);
  for (const auto& n : names) {
    auto e = example(n);
    REQUIRE(e);
    CHECK(e->name == n);
    CHECK_FALSE(e->description.empty());
    CHECK(e->graph.complete());
  }
  CHECK_FALSE(example("nope"));
  CHECK_THROWS_AS(example_system("nope"), InputError);
}

TEST_CASE("closed-form actions agree with walks") {
  std::mt19937_64 rng(2);
  for (const auto& n : example_names()) {
    CAPTURE(n);
    auto e = *example(n);
    FiniteGraph b = expand_ball(e.graph, e.graph.root(), 6);
    for (int i = 0; i < 1000; ++i) {
      const VertexKey& v = b.vertices[rng() % b.vertices.size()];
      Word w = random_word(e.graph.alphabet(), rng, 8);
      // Unreduced words too: insert a cancelling pair.
      if (i % 3 == 0 && !w.empty()) {
        const Letter x = w[rng() % w.size()];
        const std::size_t at = rng() % (w.size() + 1);
        w.insert(w.begin() + static_cast<long>(at), {x, e.graph.alphabet().inverse(x)});
      }
      CHECK(walk(e.graph, v, w) == e.act(v, w));
    }
  }
}

TEST_CASE("omega") {
  auto o = omega();
  const Alphabet& A = o.graph.alphabet();
  CHECK(o.act("p0", A.parse_word("c")) == "q0");
  CHECK(o.act("q3", A.parse_word("a")) == "q3");
  CHECK(o.act("q2", A.parse_word("a b c")) == "p3");
  CHECK(walk(o.graph, "q2", A.parse_word("a b c")) == "p3");
}

TEST_CASE("antenna") {
  auto an = antenna();
  const Alphabet& A = an.graph.alphabet();
  CHECK(an.act("1", A.parse_word("a")) == "1");
  CHECK(an.act("1", A.parse_word("a^-2")) == "1");
  CHECK(an.act("1", A.parse_word("b")) == "b");
  CHECK(an.act("b c c", A.parse_word("b")) == "b c c");
  CHECK(an.act("b c c", A.parse_word("a")) == "b c c a");
  CHECK(an.act("c'", A.parse_word("b")) == "c' b");
  CHECK(an.act("c'", A.parse_word("a")) == "c'");
}

TEST_CASE("comb and torsion graph") {
  auto cb = comb();
  const Alphabet& C = cb.graph.alphabet();
  CHECK(cb.act("z(-1,0)", C.parse_word("c a c'")) == "z(-1,1)");
  CHECK(cb.act("z(0,2)", C.parse_word("c a c'")) == "z(0,2)");
  CHECK(cb.act(cb.graph.root(), {}) == cb.graph.root());
  auto t = torsion_graph();
  const Alphabet& T = t.graph.alphabet();
  CHECK(t.act("z(0,0)", T.parse_word("a")) == "z(0,1)");
  CHECK(t.act("z(2,0)", T.parse_word("a")) == "z(2,0)");
  CHECK(t.act("z(0,0)", T.parse_word("c' a c a c' a c a")) == "z(0,0)");
  CHECK_THROWS_AS(t.graph.neighbor("z(0,2)", 0), InputError);
}

TEST_CASE("small graphs") {
  auto c5 = cycle("a", 5);
  CHECK(order(Ensemble(cycle5_system()), {0}, 20).order == 5);
  CHECK(c5.act("4", {0}) == "0");
  CHECK(order(Ensemble(line_system()), {0}, 20).kind == OrderResult::Kind::kInfinite);
  auto lp = loop_vertex({"a", "b"});
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    Word w = random_word(lp.graph.alphabet(), rng, 6);
    CHECK(lp.act("o", w) == "o");
    CHECK(is_identity(Ensemble(loop_system({"a", "b"})), w).identity);
  }
  auto ft = free_tree({"a", "b"});
  CHECK(ft.act("1", ft.graph.alphabet().parse_word("a b b' a")) == "a a");
  CHECK(counter_graph().graph.root() == "q0:Z");
}

TEST_CASE("antenna relations") {
  Ensemble e(example_system("antenna"));
  const Alphabet& A = e.alphabet();
  const Word a = A.parse_word("a"), b = A.parse_word("b"), c = A.parse_word("c");
  for (long t = 0; t <= 3; ++t) {
    for (long p = 0; p <= 3; ++p) {
      for (long s : {-2, -1, 1, 2}) {
        for (long k : {-2, -1, 1, 2}) {
          Word x = conjugate_power(A, c, -t, power(A, a, s));
          Word y = conjugate_power(A, c, p, power(A, b, k));
          CHECK(is_identity(e, commutator(A, x, y)).identity);
        }
      }
    }
  }
  Word h = commutator(A, a, conjugate_power(A, c, -1, b));
  CHECK(A.format(h) == "a c' b c a' c' b' c");
  CHECK_FALSE(is_identity(e, h).identity);
}

TEST_CASE("comb generators commute freely") {
  Ensemble e(example_system("comb"));
  const Alphabet& A = e.alphabet();
  auto g = [&](long n, long k) { return conjugate_power(A, A.parse_word("c"), n, power(A, A.parse_word("a"), k)); };
  for (long n = -4; n <= 4; ++n) {
    for (long m = -4; m <= 4; ++m) CHECK(is_identity(e, commutator(A, g(n, 1), g(m, 1))).identity);
  }
  CHECK_FALSE(is_identity(e, concat(g(1, 1), g(2, -1))).identity);
  CHECK_FALSE(is_identity(e, A.reduce(concat(concat(g(0, 2), g(3, -1)), g(1, 1)))).identity);
}

TEST_CASE("torsion companion") {
  Ensemble c = torsion_companion();
  CHECK(c.size() == 2);
  CHECK(is_identity(c, c.alphabet().parse_word("a")).identity);
  CHECK_FALSE(is_identity(c, c.alphabet().parse_word("c")).identity);
}
