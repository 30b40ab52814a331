// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#include "cftg/transducer.hpp"

#include <map>
#include <sstream>

#include "cftg/error.hpp"
#include "cftg/graph.hpp"

namespace cftg {

InfiniteConeWord InfiniteConeWord::normalized() const {
  if (period.empty()) throw DomainError("infinite word with empty period");
  InfiniteConeWord out{prefix, period};
  const std::size_t n = out.period.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = out.period[i] == out.period[i - p];
    if (ok) {
      out.period.resize(p);
      break;
    }
  }
  while (!out.prefix.empty() && out.prefix.back() == out.period.back()) {
    out.prefix.pop_back();
    int last = out.period.back();
    out.period.pop_back();
    out.period.insert(out.period.begin(), last);
  }
  return out;
}

bool InfiniteConeWord::operator==(const InfiniteConeWord& o) const {
  auto a = normalized();
  auto b = o.normalized();
  return a.prefix == b.prefix && a.period == b.period;
}

ConeWord InfiniteConeWord::take(std::size_t n) const {
  ConeWord out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(i < prefix.size() ? prefix[i]
                                    : period[(i - prefix.size()) % period.size()]);
  }
  return out;
}

Transducer Transducer::build(const EndConeSystem& sys) {
  auto issues = validate(sys);
  if (!issues.empty()) {
    throw InputError("transducer: invalid system: " + issues.front().kind + ": " +
                     issues.front().message);
  }
  Transducer T;
  T.sys_ = std::make_shared<const EndConeSystem>(sys);
  const EndConeSystem& S = *T.sys_;
  T.letters_ = ConeAlphabet(S);
  const ConeAlphabet& L = T.letters_;
  const Alphabet& A = S.alphabet();
  const int k = static_cast<int>(A.size());
  const int nl = L.size();

  // Slots in (type, slot) order; the state for (slot index, a) is
  // 2k + index * k + a.
  std::vector<std::pair<int, int>> slots;
  std::map<std::pair<int, int>, int> slot_index;
  for (int t = 0; t < S.type_count(); ++t) {
    for (int j = 0; j < static_cast<int>(S.type(t).children.size()); ++j) {
      slot_index.emplace(std::make_pair(t, j), static_cast<int>(slots.size()));
      slots.emplace_back(t, j);
    }
  }
  const int ns = 2 * k + static_cast<int>(slots.size()) * k + 1;
  for (int a = 0; a < k; ++a) T.names_.push_back("init_" + A.name(static_cast<Letter>(a)));
  for (int a = 0; a < k; ++a) T.names_.push_back("(*," + A.name(static_cast<Letter>(a)) + ")");
  for (auto [t, j] : slots) {
    for (int a = 0; a < k; ++a) {
      T.names_.push_back("(" + std::to_string(t) + "." + std::to_string(j) + "," +
                         A.name(static_cast<Letter>(a)) + ")");
    }
  }
  T.names_.push_back("E");
  const int sink = ns - 1;
  T.table_.assign(static_cast<std::size_t>(ns * nl), Transition{});
  auto set = [&](int q, int l, int next, ConeWord out) {
    T.table_[static_cast<std::size_t>(q * nl + l)] = {next, std::move(out)};
  };
  const int root = S.root_type();

  for (int a = 0; a < k; ++a) {
    const Letter la = static_cast<Letter>(a);
    // Initial state.
    for (int l = 0; l < nl; ++l) set(a, l, sink, {l});
    set(a, ConeAlphabet::root(), k + a, {});
    {
      const auto& m = S.move(root, 0, la);
      if (m.kind == EndConeSystem::MoveKind::kInternal) {
        set(a, ConeAlphabet::root_final(), sink, {ConeAlphabet::root_final()});
      } else if (m.kind == EndConeSystem::MoveKind::kCross) {
        const int child = S.type(root).children[static_cast<std::size_t>(m.slot)];
        (void)child;
        set(a, ConeAlphabet::root_final(), sink,
            {ConeAlphabet::root(), L.final_letter(root, m.slot, m.target)});
      }
    }
    // Cone states: the root cone, then every slot.
    for (int c = -1; c < static_cast<int>(slots.size()); ++c) {
      const int q = c < 0 ? k + a : 2 * k + c * k + a;
      const int pending = c < 0 ? ConeAlphabet::root()
                                : L.non_final(slots[static_cast<std::size_t>(c)].first,
                                              slots[static_cast<std::size_t>(c)].second);
      const int h = L.cone_type(pending);
      for (int l = 0; l < nl; ++l) {
        const ConeLetter& cl = L.at(l);
        const bool child_letter =
            (cl.kind == ConeLetter::Kind::kNonFinal || cl.kind == ConeLetter::Kind::kFinal) &&
            cl.type == h;
        if (!child_letter) {
          set(q, l, sink, {pending, l});
          continue;
        }
        if (cl.kind == ConeLetter::Kind::kNonFinal) {
          set(q, l, 2 * k + slot_index.at({h, cl.slot}) * k + a, {pending});
          continue;
        }
        const int t = S.type(h).children[static_cast<std::size_t>(cl.slot)];
        const auto& m = S.move(t, cl.vertex, la);
        switch (m.kind) {
          case EndConeSystem::MoveKind::kInternal:  // stay
            set(q, l, sink, {pending, L.final_letter(h, cl.slot, m.target)});
            break;
          case EndConeSystem::MoveKind::kCross:  // new
            set(q, l, sink,
                {pending, L.non_final(h, cl.slot), L.final_letter(t, m.slot, m.target)});
            break;
          case EndConeSystem::MoveKind::kExit: {  // get back
            const int u = S.exit_target(h, cl.slot, cl.vertex, la);
            if (u < 0) {
              set(q, l, sink, {pending, l});
            } else if (c < 0) {
              set(q, l, sink, {ConeAlphabet::root_final()});
            } else {
              const auto [pt, pj] = slots[static_cast<std::size_t>(c)];
              set(q, l, sink, {L.final_letter(pt, pj, u)});
            }
            break;
          }
          case EndConeSystem::MoveKind::kNone:
            set(q, l, sink, {pending, l});
            break;
        }
      }
    }
  }
  for (int l = 0; l < nl; ++l) set(sink, l, sink, {l});
  return T;
}

const Transducer::Transition& Transducer::at(int state, int letter) const {
  if (state < 0 || state >= state_count() || letter < 0 || letter >= letters_.size()) {
    throw InputError("transducer: state or letter out of range");
  }
  return table_[static_cast<std::size_t>(state * letters_.size() + letter)];
}

void Transducer::set_transition(int state, int letter, Transition t) {
  at(state, letter);
  table_[static_cast<std::size_t>(state * letters_.size() + letter)] = std::move(t);
}

Transducer::Run Transducer::run(int state, const ConeWord& w) const {
  Run r;
  r.state = state;
  for (int l : w) {
    const Transition& t = at(r.state, l);
    r.output.insert(r.output.end(), t.output.begin(), t.output.end());
    r.state = t.next;
  }
  return r;
}

ConeWord Transducer::apply(Letter a, const ConeWord& w) const {
  return run(initial(a), w).output;
}

InfiniteConeWord Transducer::apply(Letter a, const InfiniteConeWord& w) const {
  if (w.period.empty()) throw DomainError("infinite word with empty period");
  Run r = run(initial(a), w.prefix);
  ConeWord out = std::move(r.output);
  std::map<int, std::size_t> seen;  // state at period start -> output length
  int q = r.state;
  while (!seen.count(q)) {
    seen.emplace(q, out.size());
    Run p = run(q, w.period);
    out.insert(out.end(), p.output.begin(), p.output.end());
    q = p.state;
  }
  const std::size_t start = seen.at(q);
  InfiniteConeWord res{ConeWord(out.begin(), out.begin() + static_cast<long>(start)),
                       ConeWord(out.begin() + static_cast<long>(start), out.end())};
  if (res.period.empty()) throw DomainError("transducer loop produced no output");
  return res.normalized();
}

ConeWord Transducer::apply_word(const Word& g, const ConeWord& w) const {
  ConeWord cur = w;
  for (Letter a : g) cur = apply(a, cur);
  return cur;
}

InfiniteConeWord Transducer::apply_word(const Word& g, const InfiniteConeWord& w) const {
  InfiniteConeWord cur = w.normalized();
  for (Letter a : g) cur = apply(a, cur);
  return cur;
}

nlohmann::ordered_json Transducer::to_json() const {
  nlohmann::ordered_json j;
  const Alphabet& A = sys_->alphabet();
  std::vector<std::string> lnames;
  for (int l = 0; l < letters_.size(); ++l) lnames.push_back(letters_.name(l));
  j["letters"] = lnames;
  j["states"] = names_;
  nlohmann::ordered_json init = nlohmann::ordered_json::object();
  for (Letter a = 0; a < A.size(); ++a) init[A.name(a)] = names_[static_cast<std::size_t>(initial(a))];
  j["initial"] = std::move(init);
  j["sink"] = names_.back();
  auto trans = nlohmann::ordered_json::array();
  for (int q = 0; q < state_count(); ++q) {
    for (int l = 0; l < letters_.size(); ++l) {
      const Transition& t = at(q, l);
      std::vector<std::string> out;
      for (int o : t.output) out.push_back(letters_.name(o));
      trans.push_back({names_[static_cast<std::size_t>(q)], letters_.name(l), out,
                       names_[static_cast<std::size_t>(t.next)]});
    }
  }
  j["transitions"] = std::move(trans);
  return j;
}

std::string Transducer::to_dot() const {
  std::ostringstream os;
  os << "digraph T {\n  node [shape=circle];\n";
  for (int q = 0; q < state_count(); ++q) {
    os << "  q" << q << " [label=\"" << names_[static_cast<std::size_t>(q)] << "\"];\n";
  }
  // The sink copies its input; its loops are left out.
  for (int q = 0; q < sink(); ++q) {
    for (int l = 0; l < letters_.size(); ++l) {
      const Transition& t = at(q, l);
      os << "  q" << q << " -> q" << t.next << " [label=\"" << letters_.name(l) << "|"
         << letters_.format(t.output) << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

namespace {

std::vector<VertexAddress> ball_addresses(const EndConeSystem& sys, int radius) {
  auto g = as_lazy_graph(sys);
  FiniteGraph ball = expand_ball(g, g.root(), radius);
  std::vector<VertexAddress> out;
  for (const auto& k : ball.vertices) out.push_back(parse_address(sys, k));
  return out;
}

ConeWord joined(ConeWord a, const ConeWord& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

EquivarianceReport check_equivariance(const Transducer& t, int radius,
                                      const std::vector<InfiniteConeWord>& tails) {
  EquivarianceReport rep;
  const EndConeSystem& sys = t.system();
  const ConeAlphabet& L = t.letters();
  for (const auto& x : ball_addresses(sys, radius)) {
    const ConeWord wx = encode(sys, L, x);
    for (Letter a = 0; a < sys.alphabet().size(); ++a) {
      auto y = neighbor_address(sys, x, a);
      if (!y) {
        rep.ok = false;
        rep.failure = "undefined neighbor at " + address_key(sys, x);
        return rep;
      }
      const ConeWord wy = encode(sys, L, *y);
      for (const auto& eta : tails) {
        InfiniteConeWord in{joined(wx, eta.prefix), eta.period};
        InfiniteConeWord expect{joined(wy, eta.prefix), eta.period};
        ++rep.checked;
        if (!(t.apply(a, in) == expect)) {
          rep.ok = false;
          rep.failure = "letter " + sys.alphabet().name(a) + " at " + address_key(sys, x) +
                        ": got " + L.format(t.apply(a, in).take(wy.size() + 4)) +
                        ", expected " + L.format(expect.take(wy.size() + 4));
          return rep;
        }
      }
    }
  }
  return rep;
}

int identity_check_radius(const EndConeSystem& sys, const Word& g) {
  int deepest = 0;
  for (int d : sys.first_depth()) deepest = std::max(deepest, d);
  return static_cast<int>(g.size()) + deepest;
}

bool fixes_encoded_ball(const Transducer& t, const Word& g) {
  const EndConeSystem& sys = t.system();
  for (const auto& x : ball_addresses(sys, identity_check_radius(sys, g))) {
    const ConeWord wx = encode(sys, t.letters(), x);
    if (t.apply_word(g, wx) != wx) return false;
  }
  return true;
}

std::size_t max_length_change(const Transducer& t, const Word& g, int radius) {
  const EndConeSystem& sys = t.system();
  std::size_t worst = 0;
  for (const auto& x : ball_addresses(sys, radius)) {
    const ConeWord wx = encode(sys, t.letters(), x);
    const ConeWord wy = t.apply_word(g, wx);
    const std::size_t d = wx.size() > wy.size() ? wx.size() - wy.size() : wy.size() - wx.size();
    worst = std::max(worst, d);
  }
  return worst;
}

}  // namespace cftg
