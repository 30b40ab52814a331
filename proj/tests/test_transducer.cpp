// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "cftg/codec.hpp"
#include "cftg/examples.hpp"
#include "cftg/group.hpp"
#include "cftg/transducer.hpp"
#include "support.hpp"

using namespace cftg;
using cftg::testing::random_word;

namespace {

std::vector<VertexAddress> ball(const EndConeSystem& s, int r) {
  auto g = as_lazy_graph(s);
  std::vector<VertexAddress> out;
  for (const auto& k : expand_ball(g, g.root(), r).vertices) out.push_back(parse_address(s, k));
  return out;
}

ConeWord random_cone_word(const ConeAlphabet& L, std::mt19937_64& rng, std::size_t n) {
  ConeWord w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(static_cast<int>(rng() % static_cast<unsigned>(L.size())));
  return w;
}

std::vector<InfiniteConeWord> some_tails(const ConeAlphabet& L) {
  std::vector<InfiniteConeWord> tails;
  tails.push_back({{}, {ConeAlphabet::root()}});
  tails.push_back({{L.size() - 1}, {ConeAlphabet::root_final(), L.size() - 1}});
  tails.push_back({{}, {L.size() / 2}});
  return tails;
}

}  // namespace

TEST_CASE("cone alphabet and codec") {
  EndConeSystem s = omega_system();
  ConeAlphabet L(s);
  CHECK(L.name(ConeAlphabet::root()) == "(*)");
  CHECK(L.name(ConeAlphabet::root_final()) == "(*:x0)");
  std::vector<ConeWord> codes;
  for (const auto& x : ball(s, 6)) {
    ConeWord w = encode(s, L, x);
    CHECK(well_formed(s, L, w));
    auto back = decode(s, L, w);
    REQUIRE(std::holds_alternative<VertexAddress>(back));
    CHECK(std::get<VertexAddress>(back) == x);
    CHECK(static_cast<int>(w.size()) == static_cast<int>(x.slots.size()) + 1);
    codes.push_back(w);
  }
  // Well-formed words form a prefix code.
  for (const auto& u : codes) {
    for (const auto& v : codes) {
      if (u.size() < v.size()) CHECK_FALSE(std::equal(u.begin(), u.end(), v.begin()));
    }
  }
}

TEST_CASE("decode reports the first violation") {
  EndConeSystem s = line_system();
  ConeAlphabet L(s);
  auto err = [&](const ConeWord& w) { return std::get<DecodeError>(decode(s, L, w)).position; };
  const int r = L.non_final(0, 0);   // root -> right ray
  const int rf = L.final_letter(0, 0, 0);
  const int rr = L.non_final(1, 0);  // right -> right
  const int rrf = L.final_letter(1, 0, 0);
  const int lf = L.final_letter(2, 0, 0);
  CHECK(std::holds_alternative<DecodeError>(decode(s, L, {})));
  CHECK(err({rf}) == 0);
  CHECK(err({ConeAlphabet::root(), rf, rrf}) == 1);       // final letter too early
  CHECK(err({ConeAlphabet::root(), r, rr}) == 2);         // last letter not final
  CHECK(err({ConeAlphabet::root(), r, lf}) == 2);         // not a child of the right ray
  CHECK(err({ConeAlphabet::root(), ConeAlphabet::root_final()}) == 1);
  CHECK(well_formed(s, L, {ConeAlphabet::root(), r, rr, rrf}));
}

TEST_CASE("state count and sink") {
  EndConeSystem s = line_system();
  Transducer t = Transducer::build(s);
  const int k = static_cast<int>(s.alphabet().size());
  CHECK(t.state_count() == k * (2 + static_cast<int>(s.slot_count())) + 1);
  CHECK(t.state_count() == 13);
  for (int l = 0; l < t.letters().size(); ++l) {
    CHECK(t.at(t.sink(), l).next == t.sink());
    CHECK(t.at(t.sink(), l).output == ConeWord{l});
  }
  Transducer o = Transducer::build(omega_system());
  for (int q = 0; q < o.state_count(); ++q) {
    for (int l = 0; l < o.letters().size(); ++l) CHECK(o.at(q, l).output.size() <= 3);
  }
}

TEST_CASE("runs on ascending and non-well-formed inputs") {
  EndConeSystem s = line_system();
  Transducer t = Transducer::build(s);
  const ConeAlphabet& L = t.letters();
  ConeWord w{ConeAlphabet::root(), L.non_final(0, 0), L.non_final(1, 0)};
  auto r = t.run(t.initial(0), w);
  CHECK(r.output == ConeWord(w.begin(), w.end() - 1));
  CHECK(t.state_name(r.state) == "(1.0,a)");
  ConeWord bad{L.final_letter(0, 1, 0), ConeAlphabet::root()};
  auto rb = t.run(t.initial(1), bad);
  CHECK(rb.output == bad);
  CHECK(rb.state == t.sink());
  // Line: x at depth 2 on the right ray, moved by a to depth 3.
  VertexAddress x{{0, 0}, 0};
  CHECK(t.apply(0, encode(s, L, x)) == encode(s, L, VertexAddress{{0, 0, 0}, 0}));
}

TEST_CASE("equivariance") {
  for (const auto& s : {line_system(), omega_system(), cycle5_system(), free_tree_system({"a", "b"})}) {
    Transducer t = Transducer::build(s);
    auto rep = check_equivariance(t, 6, some_tails(t.letters()));
    CHECK_MESSAGE(rep.ok, rep.failure);
    CHECK(rep.checked > 0);
  }
}

TEST_CASE("fault injection breaks equivariance") {
  Transducer t = Transducer::build(omega_system());
  const ConeAlphabet& L = t.letters();
  bool injected = false;
  for (int q = 2 * 6; q < t.sink() && !injected; ++q) {
    for (int l = 0; l < L.size() && !injected; ++l) {
      // A (stay) transition: pending letter then a final letter of the same slot.
      const auto tr = t.at(q, l);
      const ConeLetter& cl = L.at(l);
      if (cl.kind != ConeLetter::Kind::kFinal || tr.output.size() != 2) continue;
      const ConeLetter& out = L.at(tr.output[1]);
      if (out.kind != ConeLetter::Kind::kFinal || out.type != cl.type || out.slot != cl.slot) continue;
      if (L.cone_type(tr.output[0]) != cl.type) continue;  // not reachable on encodings
      if (t.system().type(L.cone_type(l)).frontier.size() < 2) continue;
      const int other = L.final_letter(out.type, out.slot, out.vertex == 0 ? 1 : 0);
      t.set_transition(q, l, {tr.next, {tr.output[0], other}});
      injected = true;
    }
  }
  REQUIRE(injected);
  auto rep = check_equivariance(t, 6, some_tails(L));
  CHECK_FALSE(rep.ok);
  CHECK_FALSE(rep.failure.empty());
}

TEST_CASE("inverse law on infinite words") {
  EndConeSystem s = omega_system();
  Transducer t = Transducer::build(s);
  const ConeAlphabet& L = t.letters();
  const Alphabet& A = s.alphabet();
  std::mt19937_64 rng(3);
  auto vs = ball(s, 5);
  for (int i = 0; i < 200; ++i) {
    InfiniteConeWord xi;
    if (i % 4 == 0) {
      xi = {random_cone_word(L, rng, rng() % 4), random_cone_word(L, rng, 1 + rng() % 3)};
    } else {
      xi = {encode(s, L, vs[rng() % vs.size()]), random_cone_word(L, rng, 1 + rng() % 3)};
    }
    const Letter a = static_cast<Letter>(rng() % A.size());
    CHECK(t.apply(A.inverse(a), t.apply(a, xi)) == xi.normalized());
  }
}

TEST_CASE("composed transformations decide the word problem") {
  EndConeSystem s = omega_system();
  Transducer t = Transducer::build(s);
  Ensemble e(s);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 80; ++i) {
    Word g = random_word(s.alphabet(), rng, 6);
    CHECK(fixes_encoded_ball(t, g) == is_identity(e, g).identity);
  }
  CHECK(fixes_encoded_ball(t, s.alphabet().parse_word("c a c' b'")));
}

TEST_CASE("length changes") {
  Transducer line_t = Transducer::build(line_system());
  CHECK(max_length_change(line_t, {}, 5) == 0);
  CHECK(max_length_change(line_t, {0, 0}, 5) == 2);
  Transducer om = Transducer::build(omega_system());
  CHECK(max_length_change(om, om.system().alphabet().parse_word("c"), 5) <= 1);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 30; ++i) {
    Word g = random_word(om.system().alphabet(), rng, 5);
    CHECK(max_length_change(om, g, 4) <= g.size());
  }
}

TEST_CASE("normalized infinite words") {
  InfiniteConeWord a{{1, 2, 1, 2}, {1, 2}};
  InfiniteConeWord b{{}, {1, 2, 1, 2}};
  CHECK(a == b);
  CHECK(a.normalized().prefix.empty());
  CHECK(a.normalized().period == ConeWord{1, 2});
  CHECK(a.take(5) == ConeWord{1, 2, 1, 2, 1});
  CHECK_FALSE(a == InfiniteConeWord{{2}, {1, 2}});
}

TEST_CASE("export") {
  Transducer t = Transducer::build(line_system());
  auto j = t.to_json();
  CHECK(j["states"].size() == 13);
  CHECK(j["transitions"].size() == static_cast<std::size_t>(13 * t.letters().size()));
  CHECK(j["sink"] == "E");
  std::string dot = t.to_dot();
  CHECK(dot.rfind("digraph T {", 0) == 0);
  CHECK(dot.find("label=\"E\"") != std::string::npos);
}
