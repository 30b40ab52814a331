// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#include "cftg/alphabet.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "cftg/error.hpp"

namespace cftg {

Alphabet::Alphabet(std::vector<std::string> names,
                   std::vector<Letter> involution)
    : names_(std::move(names)), inv_(std::move(involution)) {
  if (names_.size() != inv_.size()) {
    throw InputError("alphabet: " + std::to_string(names_.size()) +
                     " names but " + std::to_string(inv_.size()) +
                     " involution entries");
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) {
      throw InputError("alphabet: empty letter name at " + std::to_string(i));
    }
    if (!seen.insert(names_[i]).second) {
      throw InputError("alphabet: duplicate letter name '" + names_[i] + "'");
    }
    if (inv_[i] >= names_.size()) {
      throw InputError("alphabet: inverse of '" + names_[i] +
                       "' is out of range");
    }
    if (inv_[i] == i) {
      throw InputError("alphabet: letter '" + names_[i] +
                       "' is its own inverse");
    }
    if (inv_[inv_[i]] != i) {
      throw InputError("alphabet: inverse map is not an involution at '" +
                       names_[i] + "'");
    }
  }
}

Alphabet Alphabet::from_generators(const std::vector<std::string>& gens) {
  std::vector<std::string> names;
  std::vector<Letter> inv;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string& g = gens[i];
    if (g.empty() || g.back() == '\'' ||
        g.find_first_of(" \t^") != std::string::npos) {
      throw InputError("alphabet: bad generator name '" + g + "'");
    }
    names.push_back(g);
    names.push_back(g + "'");
    inv.push_back(static_cast<Letter>(2 * i + 1));
    inv.push_back(static_cast<Letter>(2 * i));
  }
  return Alphabet(std::move(names), std::move(inv));
}

std::vector<std::string> Alphabet::generators() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (is_positive(static_cast<Letter>(i))) out.push_back(names_[i]);
  }
  return out;
}

std::optional<Letter> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<Letter>(i);
  }
  return std::nullopt;
}

Letter Alphabet::letter(std::string_view name) const {
  auto a = find(name);
  if (!a) throw InputError("unknown letter '" + std::string(name) + "'");
  return *a;
}

namespace {

constexpr std::string_view kSuperInverse = "⁻¹";  // ⁻¹

bool starts_with(std::string_view s, std::size_t pos, std::string_view p) {
  return s.substr(pos, p.size()) == p;
}

}  // namespace

Word Alphabet::parse_word(std::string_view text) const {
  Word out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[i])) ||
            text[i] == '*' || text[i] == '.')) {
      ++i;
    }
  };
  skip();
  if (text.substr(i) == "1" || text.substr(i) == "ε") return out;
  while (true) {
    skip();
    if (i >= text.size()) break;
    // Longest matching letter name.
    std::size_t best_len = 0;
    Letter best = 0;
    for (std::size_t k = 0; k < names_.size(); ++k) {
      const std::string& n = names_[k];
      if (n.size() > best_len && starts_with(text, i, n)) {
        best_len = n.size();
        best = static_cast<Letter>(k);
      }
    }
    if (best_len == 0) {
      throw InputError("unknown letter at position " + std::to_string(i) +
                       " in '" + std::string(text) + "'");
    }
    i += best_len;
    Letter a = best;
    if (i < text.size() && text[i] == '\'') {
      a = inverse(a);
      ++i;
    } else if (starts_with(text, i, kSuperInverse)) {
      a = inverse(a);
      i += kSuperInverse.size();
    }
    long exponent = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      bool neg = false;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        neg = text[i] == '-';
        ++i;
      }
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) {
        throw InputError("missing exponent at position " +
                         std::to_string(start) + " in '" + std::string(text) +
                         "'");
      }
      exponent = std::stol(std::string(text.substr(start, i - start)));
      if (neg) exponent = -exponent;
    }
    Letter b = exponent < 0 ? inverse(a) : a;
    for (long k = 0; k < std::labs(exponent); ++k) out.push_back(b);
  }
  return out;
}

std::string Alphabet::format(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += name(w[i]);
  }
  return out;
}

Word Alphabet::inverse(const Word& w) const {
  Word out(w.rbegin(), w.rend());
  for (Letter& a : out) a = inverse(a);
  return out;
}

Word Alphabet::reduce(const Word& w) const {
  check_word(w);
  Word out;
  out.reserve(w.size());
  for (Letter a : w) {
    if (!out.empty() && out.back() == inv_[a]) {
      out.pop_back();
    } else {
      out.push_back(a);
    }
  }
  return out;
}

bool Alphabet::is_reduced(const Word& w) const {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == inverse(w[i - 1])) return false;
  }
  return true;
}

void Alphabet::check_word(const Word& w) const {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!contains(w[i])) {
      throw InputError("letter id " + std::to_string(w[i]) + " at position " +
                       std::to_string(i) + " is not in the alphabet");
    }
  }
}

Word concat(const Word& u, const Word& v) {
  Word out(u);
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

Word power(const Alphabet& alphabet, const Word& w, long k) {
  Word base = k < 0 ? alphabet.inverse(w) : w;
  Word out;
  out.reserve(base.size() * static_cast<std::size_t>(std::labs(k)));
  for (long i = 0; i < std::labs(k); ++i) {
    out.insert(out.end(), base.begin(), base.end());
  }
  return out;
}

std::vector<Word> cyclic_shifts(const Word& w) {
  std::vector<Word> out;
  std::set<Word> seen;
  for (std::size_t s = 0; s < std::max<std::size_t>(w.size(), 1); ++s) {
    Word r;
    r.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r.push_back(w[(s + i) % w.size()]);
    if (seen.insert(r).second) out.push_back(std::move(r));
  }
  return out;
}

Word random_reduced_word(const Alphabet& alphabet, std::size_t length,
                         std::mt19937_64& rng) {
  Word w;
  if (alphabet.size() == 0) return w;
  std::uniform_int_distribution<std::size_t> any(0, alphabet.size() - 1);
  std::uniform_int_distribution<std::size_t> rest(0, alphabet.size() - 2);
  while (w.size() < length) {
    if (w.empty() || alphabet.size() < 2) {
      w.push_back(static_cast<Letter>(any(rng)));
      continue;
    }
    // Skip the letter that would cancel the previous one.
    const Letter banned = alphabet.inverse(w.back());
    auto l = static_cast<Letter>(rest(rng));
    if (l >= banned) ++l;
    w.push_back(l);
  }
  return w;
}

}  // namespace cftg
