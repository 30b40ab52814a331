// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CFTG_SPEC_IO_HPP_
#define CFTG_SPEC_IO_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cftg/cone_system.hpp"
#include "cftg/examples.hpp"
#include "cftg/graph.hpp"

namespace cftg {

// A graph described by a JSON document:
//   {"kind": "example", "name": "omega"}
//   {"kind": "line", "letter": "a"}
//   {"kind": "cycle", "letter": "a", "n": 5}
//   {"kind": "finite", "generators": [...], "vertices": [...],
//    "edges": [[from, letter, to], ...], "root": v}
//   {"kind": "free_product", "alphabet": [...],
//    "left": [{"graph": spec, "glue": rule}, ...], "right": [...]}
//     rule: {"default": i, "exceptions": {key: i}, "ranges": [{"min", "max", "target"}]}
//   {"kind": "union", "parts": [spec, ...]}
//   {"kind": "pda", "pda": machine}
//   {"kind": "system", "system": system}
// Any nested spec may instead be {"file": path}, resolved relative to the
// including file.
struct ResolvedSpec {
  std::string label;
  std::vector<LazyInverseGraph> graphs;  // one per component
  // Set when the spec carries or has a known presentation.
  std::optional<Ensemble> systems;
  std::optional<OracleGraph> oracle;
  std::string example_name;  // systems resolved lazily by name
};

// Throws InputError on schema errors or unreadable files.
ResolvedSpec resolve_spec(const nlohmann::json& spec,
                          const std::filesystem::path& base = ".");

// Reads a spec argument: "-" for stdin, an existing file path, or the bare
// name of an example.
ResolvedSpec load_spec(const std::string& arg);

nlohmann::json read_json_file(const std::filesystem::path& path);

// Systems for a resolved spec: the carried ones, or inferred per component
// with the given probe radius and stabilization depth. Throws DomainError
// when inference does not stabilize.
Ensemble systems_for(const ResolvedSpec& spec, int probe_radius = 8,
                     int stabilization_depth = 3);

}  // namespace cftg

#endif  // CFTG_SPEC_IO_HPP_
