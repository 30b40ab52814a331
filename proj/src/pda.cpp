// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#include "cftg/pda.hpp"

#include <deque>
#include <map>
#include <set>

#include "cftg/error.hpp"

namespace cftg {

InversePDA::InversePDA(Alphabet input, std::vector<std::string> states,
                       std::vector<std::string> stack_symbols, int bottom,
                       std::vector<Transition> transitions, int initial,
                       std::vector<int> final_states)
    : input_(std::move(input)),
      states_(std::move(states)),
      symbols_(std::move(stack_symbols)),
      bottom_(bottom),
      transitions_(std::move(transitions)),
      initial_(initial),
      final_(std::move(final_states)) {
  const int ns = static_cast<int>(states_.size());
  const int nk = static_cast<int>(symbols_.size());
  auto bad_name = [](const std::string& s) {
    return s.empty() || s.find_first_of(":.") != std::string::npos;
  };
  for (const auto& s : states_) {
    if (bad_name(s)) throw InputError("pda: bad state name '" + s + "'");
  }
  for (const auto& s : symbols_) {
    if (bad_name(s)) throw InputError("pda: bad stack symbol '" + s + "'");
  }
  if (bottom_ < 0 || bottom_ >= nk) throw InputError("pda: bottom symbol out of range");
  if (initial_ < 0 || initial_ >= ns) throw InputError("pda: initial state out of range");
  for (int f : final_) {
    if (f < 0 || f >= ns) throw InputError("pda: final state out of range");
  }
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    const auto& t = transitions_[i];
    bool ok = t.from >= 0 && t.from < ns && t.to >= 0 && t.to < ns && t.top >= 0 &&
              t.top < nk && (!t.letter || input_.contains(*t.letter));
    for (int x : t.push) ok = ok && x >= 0 && x < nk;
    if (!ok) throw InputError("pda: transition " + std::to_string(i) + " is out of range");
  }
}

std::optional<InversePDA::Config> InversePDA::step(const Config& c, Letter a) const {
  if (c.stack.empty()) return std::nullopt;
  const int top = c.stack.back();
  for (const auto& t : transitions_) {
    if (t.from != c.state || !t.letter || *t.letter != a || t.top != top) continue;
    Config n{t.to, c.stack};
    n.stack.pop_back();
    n.stack.insert(n.stack.end(), t.push.begin(), t.push.end());
    if (n.stack.empty()) return std::nullopt;
    return n;
  }
  return std::nullopt;
}

bool InversePDA::accepts(const Word& w) const {
  std::optional<Config> c = initial_config();
  for (Letter a : w) {
    c = step(*c, a);
    if (!c) return false;
  }
  bool fin = false;
  for (int f : final_) fin = fin || f == c->state;
  return fin && c->stack == std::vector<int>{bottom_};
}

std::string InversePDA::key(const Config& c) const {
  std::string out = states_.at(static_cast<std::size_t>(c.state)) + ":";
  for (std::size_t i = 0; i < c.stack.size(); ++i) {
    if (i) out += '.';
    out += symbols_.at(static_cast<std::size_t>(c.stack[i]));
  }
  return out;
}

InversePDA::Config InversePDA::parse_key(const std::string& key) const {
  auto colon = key.find(':');
  if (colon == std::string::npos) throw InputError("pda: bad configuration '" + key + "'");
  Config c;
  auto find = [&](const std::vector<std::string>& v, const std::string& s) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == s) return static_cast<int>(i);
    }
    throw InputError("pda: unknown name '" + s + "' in '" + key + "'");
  };
  c.state = find(states_, key.substr(0, colon));
  std::size_t i = colon + 1;
  while (i <= key.size()) {
    std::size_t j = key.find('.', i);
    if (j == std::string::npos) j = key.size();
    if (j > i) c.stack.push_back(find(symbols_, key.substr(i, j - i)));
    i = j + 1;
  }
  return c;
}

void InversePDA::set_transition(std::size_t index, Transition t) {
  transitions_.at(index) = std::move(t);
}

std::optional<PDAIssue> validate(const InversePDA& m, int depth) {
  const auto& ts = m.transitions();
  const Alphabet& A = m.input();
  auto describe = [&](const InversePDA::Transition& t) {
    std::string push;
    for (int x : t.push) push += m.stack_symbols()[static_cast<std::size_t>(x)];
    return "(" + m.states()[static_cast<std::size_t>(t.from)] + ", " +
           (t.letter ? A.name(*t.letter) : std::string("1")) + ", " +
           m.stack_symbols()[static_cast<std::size_t>(t.top)] + ") -> (" +
           m.states()[static_cast<std::size_t>(t.to)] + ", " + push + ")";
  };
  for (const auto& t : ts) {
    if (!t.letter) return PDAIssue{"real-time", "1-move " + describe(t)};
  }
  std::set<std::tuple<int, Letter, int>> seen;
  for (const auto& t : ts) {
    if (!seen.insert({t.from, *t.letter, t.top}).second) {
      return PDAIssue{"determinism", "second transition for " + describe(t)};
    }
    const int b = m.bottom();
    for (std::size_t i = 0; i < t.push.size(); ++i) {
      const bool at_bottom = t.top == b && i == 0;
      if ((t.push[i] == b) != at_bottom) {
        return PDAIssue{"bottom", "bottom symbol misplaced by " + describe(t)};
      }
    }
    if (t.top == b && t.push.empty()) {
      return PDAIssue{"bottom", "bottom symbol popped by " + describe(t)};
    }
  }
  std::map<InversePDA::Config, int> dist{{m.initial_config(), 0}};
  std::deque<InversePDA::Config> queue{m.initial_config()};
  while (!queue.empty()) {
    auto c = queue.front();
    queue.pop_front();
    const int dc = dist.at(c);
    for (Letter a = 0; a < A.size(); ++a) {
      auto n = m.step(c, a);
      if (!n) continue;
      auto back = m.step(*n, A.inverse(a));
      if (!back || *back != c) {
        return PDAIssue{"reversibility",
                        m.key(c) + " -" + A.name(a) + "-> " + m.key(*n) + " but " +
                            A.name(A.inverse(a)) + " leads to " +
                            (back ? m.key(*back) : std::string("nothing"))};
      }
      if (dc < depth && dist.emplace(*n, dc + 1).second) queue.push_back(*n);
    }
  }
  return std::nullopt;
}

LazyInverseGraph config_graph(const InversePDA& m) {
  auto shared = std::make_shared<InversePDA>(m);
  // Complete when every (state, letter, top) pair has a transition and no
  // pop can reach the bottom.
  return LazyInverseGraph(
      m.input(), m.key(m.initial_config()),
      [shared](const VertexKey& k, Letter a) -> std::optional<VertexKey> {
        auto n = shared->step(shared->parse_key(k), a);
        if (!n) return std::nullopt;
        return shared->key(*n);
      },
      true);
}

InversePDA pda_from_json(const nlohmann::json& j) {
  try {
    auto gens = j.at("input").get<std::vector<std::string>>();
    Alphabet A = Alphabet::from_generators(gens);
    auto states = j.at("states").get<std::vector<std::string>>();
    auto symbols = j.at("stack").get<std::vector<std::string>>();
    auto index = [](const std::vector<std::string>& v, const std::string& s,
                    const char* what) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == s) return static_cast<int>(i);
      }
      throw InputError(std::string("pda: unknown ") + what + " '" + s + "'");
    };
    int bottom = index(symbols, j.at("bottom").get<std::string>(), "stack symbol");
    int initial = j.contains("initial")
                      ? index(states, j.at("initial").get<std::string>(), "state")
                      : 0;
    std::vector<int> fin;
    if (j.contains("final")) {
      for (const auto& f : j.at("final")) fin.push_back(index(states, f.get<std::string>(), "state"));
    } else {
      fin.push_back(initial);
    }
    std::vector<InversePDA::Transition> ts;
    for (const auto& t : j.at("transitions")) {
      InversePDA::Transition tr;
      tr.from = index(states, t.at("from").get<std::string>(), "state");
      tr.to = index(states, t.at("to").get<std::string>(), "state");
      tr.top = index(symbols, t.at("top").get<std::string>(), "stack symbol");
      const auto& r = t.at("read");
      if (!r.is_null() && r.get<std::string>() != "1") tr.letter = A.letter(r.get<std::string>());
      for (const auto& p : t.at("push")) tr.push.push_back(index(symbols, p.get<std::string>(), "stack symbol"));
      ts.push_back(std::move(tr));
    }
    return InversePDA(std::move(A), std::move(states), std::move(symbols), bottom,
                      std::move(ts), initial, std::move(fin));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("pda: ") + e.what());
  }
}

nlohmann::ordered_json pda_to_json(const InversePDA& m) {
  nlohmann::ordered_json j;
  j["input"] = m.input().generators();
  j["states"] = m.states();
  j["stack"] = m.stack_symbols();
  j["bottom"] = m.stack_symbols()[static_cast<std::size_t>(m.bottom())];
  j["initial"] = m.states()[static_cast<std::size_t>(m.initial())];
  std::vector<std::string> fin;
  for (int f : m.final_states()) fin.push_back(m.states()[static_cast<std::size_t>(f)]);
  j["final"] = fin;
  auto ts = nlohmann::ordered_json::array();
  for (const auto& t : m.transitions()) {
    nlohmann::ordered_json jt;
    jt["from"] = m.states()[static_cast<std::size_t>(t.from)];
    jt["read"] = t.letter ? m.input().name(*t.letter) : std::string("1");
    jt["top"] = m.stack_symbols()[static_cast<std::size_t>(t.top)];
    jt["to"] = m.states()[static_cast<std::size_t>(t.to)];
    std::vector<std::string> push;
    for (int x : t.push) push.push_back(m.stack_symbols()[static_cast<std::size_t>(x)]);
    jt["push"] = push;
    ts.push_back(std::move(jt));
  }
  j["transitions"] = std::move(ts);
  return j;
}

InversePDA signed_counter_pda() {
  Alphabet A = Alphabet::from_generators({"a"});
  const Letter a = 0, ai = 1;
  enum { q0, qp, qm };
  enum { Z, X, Y };
  std::vector<InversePDA::Transition> ts = {
      {q0, a, Z, qp, {Z, X}},  {q0, ai, Z, qm, {Z, X}},
      {qp, a, X, qp, {X, Y}},  {qp, a, Y, qp, {Y, Y}},
      {qp, ai, Y, qp, {}},     {qp, ai, X, q0, {}},
      {qm, ai, X, qm, {X, Y}}, {qm, ai, Y, qm, {Y, Y}},
      {qm, a, Y, qm, {}},      {qm, a, X, q0, {}},
  };
  return InversePDA(A, {"q0", "q+", "q-"}, {"Z", "X", "Y"}, Z, ts, q0, {q0});
}

InversePDA free_group_pda(const std::vector<std::string>& generators) {
  Alphabet A = Alphabet::from_generators(generators);
  std::vector<std::string> symbols{"Z"};
  for (Letter a = 0; a < A.size(); ++a) {
    std::string n = A.name(a);
    if (n.back() == '\'') n = n.substr(0, n.size() - 1) + "_";
    symbols.push_back("S" + n);
  }
  auto sym = [](Letter a) { return static_cast<int>(a) + 1; };
  std::vector<InversePDA::Transition> ts;
  for (Letter a = 0; a < A.size(); ++a) {
    ts.push_back({0, a, 0, 0, {0, sym(a)}});
    for (Letter top = 0; top < A.size(); ++top) {
      if (top == A.inverse(a)) {
        ts.push_back({0, a, sym(top), 0, {}});
      } else {
        ts.push_back({0, a, sym(top), 0, {sym(top), sym(a)}});
      }
    }
  }
  return InversePDA(A, {"q"}, symbols, 0, ts, 0, {0});
}

InversePDA cycle_pda(int n) {
  Alphabet A = Alphabet::from_generators({"a"});
  std::vector<std::string> states;
  for (int i = 0; i < n; ++i) states.push_back("s" + std::to_string(i));
  std::vector<InversePDA::Transition> ts;
  for (int i = 0; i < n; ++i) {
    ts.push_back({i, 0, 0, (i + 1) % n, {0}});
    ts.push_back({(i + 1) % n, 1, 0, i, {0}});
  }
  return InversePDA(A, states, {"Z"}, 0, ts, 0, {0});
}

}  // namespace cftg
