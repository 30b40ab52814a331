// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CFTG_ALPHABET_HPP_
#define CFTG_ALPHABET_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace cftg {

using Letter = std::uint16_t;
using Word = std::vector<Letter>;

// A finite set of letters with a fixpoint-free involution.
//
// Alphabets built from generator names use the ids 2i (generator i) and
// 2i+1 (its inverse, named with a trailing apostrophe).
class Alphabet {
 public:
  Alphabet() = default;

  // Validates the involution; throws InputError on fixpoints, non-involutions
  // or duplicate names.
  Alphabet(std::vector<std::string> names, std::vector<Letter> involution);

  static Alphabet from_generators(const std::vector<std::string>& generators);

  std::size_t size() const noexcept { return names_.size(); }
  Letter inverse(Letter a) const { return inv_.at(a); }
  const std::string& name(Letter a) const { return names_.at(a); }
  bool contains(Letter a) const noexcept { return a < names_.size(); }

  // The first letter of each involution pair, in id order.
  bool is_positive(Letter a) const { return a <= inv_.at(a); }
  std::vector<std::string> generators() const;

  std::optional<Letter> find(std::string_view name) const;
  Letter letter(std::string_view name) const;  // throws InputError

  // Accepts concatenated or space separated tokens; each token is a letter
  // name followed by optional ', ⁻¹ or ^k. "1", "ε" and "" denote the empty
  // word. Throws InputError on unknown letters.
  Word parse_word(std::string_view text) const;
  std::string format(const Word& w) const;

  Word inverse(const Word& w) const;
  Word reduce(const Word& w) const;
  bool is_reduced(const Word& w) const;

  // Throws InputError naming the offending position.
  void check_word(const Word& w) const;

  // Same generator list in the same order.
  bool operator==(const Alphabet& other) const {
    return names_ == other.names_ && inv_ == other.inv_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Letter> inv_;
};

// Word helpers that do not need names.
Word concat(const Word& u, const Word& v);
Word power(const Alphabet& alphabet, const Word& w, long k);
std::vector<Word> cyclic_shifts(const Word& w);

// Uniformly random reduced word of the given length.
Word random_reduced_word(const Alphabet& alphabet, std::size_t length,
                         std::mt19937_64& rng);

}  // namespace cftg

#endif  // CFTG_ALPHABET_HPP_
