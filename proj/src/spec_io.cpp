// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#include "cftg/spec_io.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>

#include "cftg/error.hpp"
#include "cftg/inference.hpp"
#include "cftg/pda.hpp"
#include "cftg/product.hpp"

namespace cftg {
namespace {

using nlohmann::json;

GluingRule parse_rule(const json& j) {
  GluingRule rule;
  if (j.is_number_integer()) {
    rule.default_target = j.get<int>();
    return rule;
  }
  rule.default_target = j.value("default", 0);
  if (j.contains("exceptions")) {
    for (const auto& [k, v] : j.at("exceptions").items()) rule.exceptions[k] = v.get<int>();
  }
  if (j.contains("ranges")) {
    for (const auto& r : j.at("ranges")) {
      GluingRule::Range range;
      if (r.contains("min")) range.min = r.at("min").get<long>();
      if (r.contains("max")) range.max = r.at("max").get<long>();
      range.target = r.at("target").get<int>();
      rule.ranges.push_back(range);
    }
  }
  return rule;
}

std::string kind_of(const json& j) {
  if (!j.is_object()) throw InputError("spec must be a JSON object");
  if (!j.contains("kind")) throw InputError("spec has no \"kind\"");
  return j.at("kind").get<std::string>();
}

ResolvedSpec resolve(const json& spec, const std::filesystem::path& base);

ResolvedSpec resolve_nested(const json& j, const std::filesystem::path& base) {
  if (j.is_object() && j.contains("file") && !j.contains("kind")) {
    auto path = base / j.at("file").get<std::string>();
    return resolve(read_json_file(path), path.parent_path());
  }
  return resolve(j, base);
}

const LazyInverseGraph& single(const ResolvedSpec& r) {
  if (r.graphs.size() != 1) throw InputError("spec '" + r.label + "' is not connected");
  return r.graphs[0];
}

ResolvedSpec resolve(const json& spec, const std::filesystem::path& base) {
  const std::string kind = kind_of(spec);
  ResolvedSpec out;
  out.label = kind;
  if (kind == "example") {
    const auto name = spec.at("name").get<std::string>();
    auto ex = example(name);
    if (!ex) throw InputError("unknown example '" + name + "'");
    out.label = name;
    out.graphs = {ex->graph};
    out.oracle = ex;
    out.example_name = name;
  } else if (kind == "line") {
    const auto letter = spec.value("letter", std::string("a"));
    auto ex = line(letter);
    out.graphs = {ex.graph};
    out.oracle = ex;
    out.systems = Ensemble(line_system(letter));
  } else if (kind == "cycle") {
    const auto letter = spec.value("letter", std::string("a"));
    const int n = spec.at("n").get<int>();
    auto ex = cycle(letter, n);
    out.label = "cycle" + std::to_string(n);
    out.graphs = {ex.graph};
    out.oracle = ex;
    if (n == 5 && letter == "a") out.systems = Ensemble(cycle5_system());
  } else if (kind == "finite") {
    Alphabet A = Alphabet::from_generators(spec.at("generators").get<std::vector<std::string>>());
    auto vertices = spec.at("vertices").get<std::vector<std::string>>();
    std::vector<FiniteEdge> edges;
    for (const auto& e : spec.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw InputError("finite edge must be [from, letter, to]");
      edges.push_back({e[0].get<std::string>(), A.letter(e[1].get<std::string>()),
                       e[2].get<std::string>()});
    }
    const auto root = spec.contains("root") ? spec.at("root").get<std::string>()
                                            : vertices.at(0);
    out.graphs = {finite_graph(A, vertices, edges, root)};
  } else if (kind == "free_product") {
    ProductSide sides[2];
    const char* names[2] = {"left", "right"};
    for (int s = 0; s < 2; ++s) {
      for (const auto& f : spec.at(names[s])) {
        auto g = resolve_nested(f.at("graph"), base);
        sides[s].push_back({single(g), parse_rule(f.value("glue", json(0))).as_map()});
      }
    }
    std::optional<Alphabet> A;
    if (spec.contains("alphabet")) {
      A = Alphabet::from_generators(spec.at("alphabet").get<std::vector<std::string>>());
    }
    out.graphs = {free_product(sides[0], sides[1], A)};
  } else if (kind == "union") {
    std::vector<EndConeSystem> systems;
    bool all_systems = true;
    std::vector<LazyInverseGraph> graphs;
    for (const auto& p : spec.at("parts")) {
      auto r = resolve_nested(p, base);
      graphs.insert(graphs.end(), r.graphs.begin(), r.graphs.end());
      if (r.systems) {
        systems.insert(systems.end(), r.systems->systems().begin(), r.systems->systems().end());
      } else {
        all_systems = false;
      }
    }
    if (graphs.empty()) throw InputError("union has no parts");
    std::vector<std::string> gens;
    for (const auto& g : graphs) {
      for (const auto& x : g.alphabet().generators()) {
        if (std::find(gens.begin(), gens.end(), x) == gens.end()) gens.push_back(x);
      }
    }
    Alphabet A = Alphabet::from_generators(gens);
    for (const auto& g : graphs) out.graphs.push_back(pad(g, A));
    if (all_systems) out.systems = disjoint_union(systems);
  } else if (kind == "pda") {
    const json& m = spec.at("pda");
    InversePDA pda = (m.is_object() && m.contains("file"))
                         ? pda_from_json(read_json_file(base / m.at("file").get<std::string>()))
                         : pda_from_json(m);
    if (auto issue = validate(pda, spec.value("depth", 8))) {
      throw InputError("pda: " + issue->kind + ": " + issue->message);
    }
    out.graphs = {config_graph(pda)};
  } else if (kind == "system") {
    const json& s = spec.at("system");
    EndConeSystem sys = (s.is_object() && s.contains("file"))
                            ? system_from_json(read_json_file(base / s.at("file").get<std::string>()))
                            : system_from_json(s);
    out.graphs = {as_lazy_graph(sys)};
    out.systems = Ensemble(sys);
  } else {
    throw InputError("unknown spec kind '" + kind + "'");
  }
  return out;
}

}  // namespace

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("'" + path.string() + "': " + e.what());
  }
}

ResolvedSpec resolve_spec(const nlohmann::json& spec, const std::filesystem::path& base) {
  try {
    return resolve_nested(spec, base);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("spec: ") + e.what());
  }
}

ResolvedSpec load_spec(const std::string& arg) {
  if (arg == "-") {
    std::string text{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    try {
      return resolve_spec(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(std::string("stdin: ") + e.what());
    }
  }
  std::filesystem::path p(arg);
  std::error_code ec;
  if (std::filesystem::is_regular_file(p, ec)) return resolve_spec(read_json_file(p), p.parent_path());
  if (example(arg)) return resolve_spec(nlohmann::json{{"kind", "example"}, {"name", arg}});
  throw InputError("'" + arg + "' is neither a spec file nor an example name");
}

Ensemble systems_for(const ResolvedSpec& spec, int probe_radius, int stabilization_depth) {
  if (spec.systems) return *spec.systems;
  if (!spec.example_name.empty()) return Ensemble(example_system(spec.example_name));
  std::vector<EndConeSystem> out;
  for (const auto& g : spec.graphs) {
    auto r = infer_system(g, probe_radius, stabilization_depth);
    if (auto* n = std::get_if<NotStabilized>(&r)) {
      throw DomainError("inference did not stabilize for '" + spec.label + "': " + n->reason);
    }
    out.push_back(std::get<EndConeSystem>(std::move(r)));
  }
  return disjoint_union(out);
}

}  // namespace cftg
