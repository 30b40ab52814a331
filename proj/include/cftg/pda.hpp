// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CFTG_PDA_HPP_
#define CFTG_PDA_HPP_

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cftg/alphabet.hpp"
#include "cftg/graph.hpp"

namespace cftg {

// Real-time pushdown automaton over an involutive input alphabet. A
// transition reads a letter (nullopt: a 1-move) with `top` on top of the
// stack and replaces that top symbol with `push` (bottom-first).
class InversePDA {
 public:
  struct Transition {
    int from;
    std::optional<Letter> letter;
    int top;
    int to;
    std::vector<int> push;
  };
  struct Config {
    int state = 0;
    std::vector<int> stack;  // bottom-first

    auto operator<=>(const Config&) const = default;
  };

  InversePDA(Alphabet input, std::vector<std::string> states,
             std::vector<std::string> stack_symbols, int bottom,
             std::vector<Transition> transitions, int initial = 0,
             std::vector<int> final_states = {0});

  const Alphabet& input() const { return input_; }
  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& stack_symbols() const { return symbols_; }
  int bottom() const { return bottom_; }
  int initial() const { return initial_; }
  const std::vector<int>& final_states() const { return final_; }
  const std::vector<Transition>& transitions() const { return transitions_; }

  Config initial_config() const { return {initial_, {bottom_}}; }

  // Undefined when no transition applies or the stack would empty.
  std::optional<Config> step(const Config& c, Letter a) const;

  // Final state with only the bottom symbol left.
  bool accepts(const Word& w) const;

  std::string key(const Config& c) const;  // "state:sym.sym..."
  Config parse_key(const std::string& key) const;

  // Replaces one transition; used to inject faults.
  void set_transition(std::size_t index, Transition t);

 private:
  Alphabet input_;
  std::vector<std::string> states_;
  std::vector<std::string> symbols_;
  int bottom_;
  std::vector<Transition> transitions_;
  int initial_;
  std::vector<int> final_;
};

struct PDAIssue {
  std::string kind;  // "real-time", "determinism", "bottom", "reversibility"
  std::string message;
};

// Structural checks, then reversibility over all configurations reachable
// in at most `depth` steps: c.a = c' implies c'.a' = c. Reports the first
// problem found.
std::optional<PDAIssue> validate(const InversePDA& m, int depth);

// Configuration graph rooted at the initial configuration.
LazyInverseGraph config_graph(const InversePDA& m);

InversePDA pda_from_json(const nlohmann::json& j);  // InputError
nlohmann::ordered_json pda_to_json(const InversePDA& m);

// Counter with states q0, q+, q- and stack symbols Z (bottom), X (first
// unit), Y (further units); configuration graph is the a-line.
InversePDA signed_counter_pda();

// One state, a stack symbol per letter; configuration graph is the free
// tree over the given generators.
InversePDA free_group_pda(const std::vector<std::string>& generators);

// States 0..n-1 cycled by a, stack untouched.
InversePDA cycle_pda(int n);

}  // namespace cftg

#endif  // CFTG_PDA_HPP_
