// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CFTG_TRANSDUCER_HPP_
#define CFTG_TRANSDUCER_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cftg/codec.hpp"
#include "cftg/cone_system.hpp"

namespace cftg {

// Ultimately periodic infinite word prefix . period^omega; period non-empty.
struct InfiniteConeWord {
  ConeWord prefix;
  ConeWord period;

  // Primitive period, shortest prefix. Equal words have equal normal forms.
  InfiniteConeWord normalized() const;
  bool operator==(const InfiniteConeWord& o) const;
  ConeWord take(std::size_t n) const;
};

// Synchronous-input transducer over cone letters realizing the action of
// each letter of the system's alphabet on encoded vertices.
//
// States: an initial state per letter, a "current cone is the root" state
// per letter, a state per (child slot, letter), and the sink that copies
// its input.
class Transducer {
 public:
  struct Transition {
    int next = 0;
    ConeWord output;
  };

  static Transducer build(const EndConeSystem& sys);

  const EndConeSystem& system() const { return *sys_; }
  const ConeAlphabet& letters() const { return letters_; }
  int state_count() const { return static_cast<int>(names_.size()); }
  int initial(Letter a) const { return a; }
  int sink() const { return state_count() - 1; }
  const std::string& state_name(int q) const { return names_.at(static_cast<std::size_t>(q)); }

  const Transition& at(int state, int letter) const;
  // Replaces one transition; used to inject faults.
  void set_transition(int state, int letter, Transition t);

  struct Run {
    ConeWord output;
    int state = 0;
  };
  Run run(int state, const ConeWord& w) const;

  // Action of one letter or a word (letters applied left to right).
  ConeWord apply(Letter a, const ConeWord& w) const;
  InfiniteConeWord apply(Letter a, const InfiniteConeWord& w) const;
  ConeWord apply_word(const Word& g, const ConeWord& w) const;
  InfiniteConeWord apply_word(const Word& g, const InfiniteConeWord& w) const;

  nlohmann::ordered_json to_json() const;
  std::string to_dot() const;

 private:
  std::shared_ptr<const EndConeSystem> sys_;
  ConeAlphabet letters_;
  std::vector<std::string> names_;
  std::vector<Transition> table_;  // state * |letters| + letter
};

// Every encoded vertex x within `radius` of the root and every tail eta:
// run(init_a, encode(x) eta) == encode(x.a) eta.
struct EquivarianceReport {
  bool ok = true;
  std::size_t checked = 0;
  std::string failure;
};
EquivarianceReport check_equivariance(const Transducer& t, int radius,
                                      const std::vector<InfiniteConeWord>& tails);

// Radius of the vertex ball that decides whether the composed transformation
// of g is trivial: |g| plus the depth at which every type has occurred.
int identity_check_radius(const EndConeSystem& sys, const Word& g);

// Composed transformation of g fixes every encoded vertex within
// identity_check_radius.
bool fixes_encoded_ball(const Transducer& t, const Word& g);

// Largest change of the encoding length under one letter over the ball.
std::size_t max_length_change(const Transducer& t, const Word& g, int radius);

}  // namespace cftg

#endif  // CFTG_TRANSDUCER_HPP_
