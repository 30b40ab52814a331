// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CFTG_CODEC_HPP_
#define CFTG_CODEC_HPP_

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cftg/cone_system.hpp"

namespace cftg {

// Letters naming cones: the root cone, the root vertex, a child slot of a
// type (non-final) and a frontier vertex of such a slot (final).
struct ConeLetter {
  enum class Kind { kRoot, kRootFinal, kNonFinal, kFinal };
  Kind kind = Kind::kRoot;
  int type = -1;
  int slot = -1;
  int vertex = -1;

  bool final() const { return kind == Kind::kRootFinal || kind == Kind::kFinal; }
};

using ConeWord = std::vector<int>;

class ConeAlphabet {
 public:
  ConeAlphabet() = default;
  explicit ConeAlphabet(const EndConeSystem& sys);

  int size() const { return static_cast<int>(letters_.size()); }
  const ConeLetter& at(int id) const { return letters_.at(static_cast<std::size_t>(id)); }
  static constexpr int root() { return 0; }
  static constexpr int root_final() { return 1; }
  int non_final(int type, int slot) const;
  int final_letter(int type, int slot, int vertex) const;

  // Type of the cone a letter names (root type for the root letters).
  int cone_type(int id) const;
  // id2 names a second-level cone of the cone named by id1.
  bool ascends(int id1, int id2) const;

  const std::string& name(int id) const { return names_.at(static_cast<std::size_t>(id)); }
  std::optional<int> find(const std::string& name) const;
  std::string format(const ConeWord& w) const;

 private:
  std::vector<ConeLetter> letters_;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> non_final_;              // [type][slot]
  std::vector<std::vector<std::vector<int>>> final_;     // [type][slot][vertex]
  std::vector<int> cone_type_;
};

ConeWord encode(const EndConeSystem& sys, const ConeAlphabet& alphabet,
                const VertexAddress& x);

struct DecodeError {
  std::size_t position = 0;
  std::string reason;
};

std::variant<VertexAddress, DecodeError> decode(const EndConeSystem& sys,
                                                const ConeAlphabet& alphabet,
                                                const ConeWord& w);

bool well_formed(const EndConeSystem& sys, const ConeAlphabet& alphabet,
                 const ConeWord& w);

}  // namespace cftg

#endif  // CFTG_CODEC_HPP_
