// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#include "cftg/codec.hpp"

#include "cftg/error.hpp"

namespace cftg {

ConeAlphabet::ConeAlphabet(const EndConeSystem& sys) {
  const int root = sys.root_type();
  const std::string& x0 = sys.type(root).frontier.at(0);
  letters_.push_back({ConeLetter::Kind::kRoot, root, -1, -1});
  names_.push_back("(*)");
  cone_type_.push_back(root);
  letters_.push_back({ConeLetter::Kind::kRootFinal, root, -1, 0});
  names_.push_back("(*:" + x0 + ")");
  cone_type_.push_back(root);
  non_final_.resize(static_cast<std::size_t>(sys.type_count()));
  final_.resize(static_cast<std::size_t>(sys.type_count()));
  for (int t = 0; t < sys.type_count(); ++t) {
    const auto& ct = sys.type(t);
    for (int j = 0; j < static_cast<int>(ct.children.size()); ++j) {
      const int child = ct.children[static_cast<std::size_t>(j)];
      const std::string base = std::to_string(t) + "." + std::to_string(j);
      non_final_[static_cast<std::size_t>(t)].push_back(size());
      letters_.push_back({ConeLetter::Kind::kNonFinal, t, j, -1});
      names_.push_back("(" + base + ")");
      cone_type_.push_back(child);
      final_[static_cast<std::size_t>(t)].emplace_back();
      const auto& frontier = sys.type(child).frontier;
      for (int v = 0; v < static_cast<int>(frontier.size()); ++v) {
        final_[static_cast<std::size_t>(t)].back().push_back(size());
        letters_.push_back({ConeLetter::Kind::kFinal, t, j, v});
        names_.push_back("(" + base + ":" + frontier[static_cast<std::size_t>(v)] + ")");
        cone_type_.push_back(child);
      }
    }
  }
}

int ConeAlphabet::non_final(int type, int slot) const {
  return non_final_.at(static_cast<std::size_t>(type)).at(static_cast<std::size_t>(slot));
}

int ConeAlphabet::final_letter(int type, int slot, int vertex) const {
  return final_.at(static_cast<std::size_t>(type))
      .at(static_cast<std::size_t>(slot))
      .at(static_cast<std::size_t>(vertex));
}

int ConeAlphabet::cone_type(int id) const {
  return cone_type_.at(static_cast<std::size_t>(id));
}

bool ConeAlphabet::ascends(int id1, int id2) const {
  const ConeLetter& l2 = at(id2);
  if (l2.kind == ConeLetter::Kind::kRoot || l2.kind == ConeLetter::Kind::kRootFinal) {
    return false;
  }
  return l2.type == cone_type(id1);
}

std::optional<int> ConeAlphabet::find(const std::string& n) const {
  for (int i = 0; i < size(); ++i) {
    if (names_[static_cast<std::size_t>(i)] == n) return i;
  }
  return std::nullopt;
}

std::string ConeAlphabet::format(const ConeWord& w) const {
  std::string out;
  for (int id : w) out += name(id);
  return out;
}

ConeWord encode(const EndConeSystem& sys, const ConeAlphabet& alphabet,
                const VertexAddress& x) {
  if (x.slots.empty()) return {ConeAlphabet::root_final()};
  ConeWord w{ConeAlphabet::root()};
  int t = sys.root_type();
  for (std::size_t i = 0; i < x.slots.size(); ++i) {
    const int s = x.slots[i];
    if (i + 1 == x.slots.size()) {
      w.push_back(alphabet.final_letter(t, s, x.vertex));
    } else {
      w.push_back(alphabet.non_final(t, s));
    }
    t = sys.type(t).children.at(static_cast<std::size_t>(s));
  }
  return w;
}

std::variant<VertexAddress, DecodeError> decode(const EndConeSystem& sys,
                                                const ConeAlphabet& alphabet,
                                                const ConeWord& w) {
  (void)sys;
  if (w.empty()) return DecodeError{0, "empty word"};
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 0 || w[i] >= alphabet.size()) {
      return DecodeError{i, "letter out of range"};
    }
  }
  if (w.size() == 1) {
    if (w[0] == ConeAlphabet::root_final()) return VertexAddress{};
    return DecodeError{0, "a single letter must be the root vertex letter"};
  }
  if (w[0] != ConeAlphabet::root()) {
    return DecodeError{0, "first letter must be the root cone letter"};
  }
  VertexAddress x;
  for (std::size_t i = 1; i < w.size(); ++i) {
    const ConeLetter& l = alphabet.at(w[i]);
    if (!alphabet.ascends(w[i - 1], w[i])) {
      return DecodeError{i, "letter does not name a child cone of the previous one"};
    }
    const bool last = i + 1 == w.size();
    if (l.final() != last) {
      return DecodeError{i, last ? "last letter is not final"
                                 : "final letter before the end"};
    }
    x.slots.push_back(l.slot);
    if (last) x.vertex = l.vertex;
  }
  return x;
}

bool well_formed(const EndConeSystem& sys, const ConeAlphabet& alphabet,
                 const ConeWord& w) {
  return std::holds_alternative<VertexAddress>(decode(sys, alphabet, w));
}

}  // namespace cftg
