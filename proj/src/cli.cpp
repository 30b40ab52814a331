// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#include "cftg/cli.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cftg/codec.hpp"
#include "cftg/error.hpp"
#include "cftg/examples.hpp"
#include "cftg/group.hpp"
#include "cftg/inference.hpp"
#include "cftg/spec_io.hpp"
#include "cftg/transducer.hpp"

namespace cftg {
namespace {

using Json = nlohmann::ordered_json;

Json conflict_json(const Alphabet& A, const Conflict& c) {
  Json j;
  j["vertex"] = c.vertex;
  j["letter"] = A.contains(c.letter) ? A.name(c.letter) : std::to_string(c.letter);
  j["expected"] = c.expected ? Json(*c.expected) : Json(nullptr);
  j["found"] = c.found ? Json(*c.found) : Json(nullptr);
  j["reason"] = c.reason;
  return j;
}

std::string kind_name(OrderResult::Kind k) {
  switch (k) {
    case OrderResult::Kind::kFinite: return "finite";
    case OrderResult::Kind::kInfinite: return "infinite";
    default: return "unknown";
  }
}

struct Options {
  std::string spec;
  std::string second;
  std::string word;
  std::string center;
  std::string format = "json";
  int radius = 2;
  int component = 0;
  std::uint64_t max_exp = 1000;
  int d = 8;
  int s = 3;
  bool build = false;
  std::vector<std::string> run;
};

const LazyInverseGraph& component(const ResolvedSpec& r, int i) {
  if (i < 0 || i >= static_cast<int>(r.graphs.size())) {
    throw InputError("component " + std::to_string(i) + " does not exist");
  }
  return r.graphs[static_cast<std::size_t>(i)];
}

int emit_ball(const LazyInverseGraph& g, const Options& o, std::ostream& out, std::ostream& err) {
  if (o.radius < 0) throw InputError("radius must be non-negative");
  const VertexKey center = o.center.empty() ? g.root() : o.center;
  FiniteGraph b = expand_ball(g, center, o.radius);
  if (o.format == "dot") {
    out << to_dot(b);
  } else if (o.format == "json") {
    out << to_json(b).dump(2) << "\n";
  } else {
    throw InputError("unknown format '" + o.format + "'");
  }
  err << b.vertices.size() << " vertices within radius " << o.radius << " of " << center << "\n";
  return kExitOk;
}

int cmd_examples(std::ostream& out, std::ostream& err) {
  Json list = Json::array();
  for (const auto& name : example_names()) {
    auto ex = example(name);
    Json j;
    j["name"] = name;
    j["description"] = ex->description;
    j["generators"] = ex->graph.alphabet().generators();
    j["root"] = ex->graph.root();
    list.push_back(std::move(j));
  }
  out << list.dump(2) << "\n";
  err << list.size() << " examples\n";
  return kExitOk;
}

int cmd_wp(const Options& o, std::ostream& out, std::ostream& err) {
  auto spec = load_spec(o.spec);
  Ensemble ens = systems_for(spec, o.d, o.s);
  const Alphabet& A = ens.alphabet();
  Word w = A.parse_word(o.word);
  auto r = is_identity(ens, w);
  Json j;
  j["spec"] = spec.label;
  j["word"] = A.format(w);
  j["identity"] = r.identity;
  if (r.witness) {
    const auto& wt = *r.witness;
    const auto& sys = ens[wt.system];
    Json wj;
    wj["system"] = wt.system;
    wj["type"] = sys.type(wt.type).name;
    wj["vertex"] = sys.type(wt.type).frontier[static_cast<std::size_t>(wt.vertex)];
    wj["shift"] = wt.shift;
    wj["end"] = address_key(sys, wt.end);
    j["witness"] = std::move(wj);
  } else {
    j["witness"] = nullptr;
  }
  out << j.dump(2) << "\n";
  err << A.format(w) << (r.identity ? " is the identity\n" : " is not the identity\n");
  return r.identity ? kExitOk : kExitNegative;
}

int cmd_order(const Options& o, std::ostream& out, std::ostream& err) {
  auto spec = load_spec(o.spec);
  Ensemble ens = systems_for(spec, o.d, o.s);
  const Alphabet& A = ens.alphabet();
  Word w = A.parse_word(o.word);
  auto r = order(ens, w, o.max_exp);
  auto tb = torsion_bound(ens, w);
  std::string verdict = kind_name(r.kind);
  if (r.kind == OrderResult::Kind::kFinite) verdict += " (order " + std::to_string(r.order) + ")";
  if (r.kind == OrderResult::Kind::kInfinite) verdict += " (certified)";
  Json j;
  j["spec"] = spec.label;
  j["word"] = A.format(w);
  j["kind"] = kind_name(r.kind);
  j["verdict"] = verdict;
  j["order"] = r.kind == OrderResult::Kind::kFinite ? Json(r.order) : Json(nullptr);
  j["searched_up_to"] = r.searched_up_to;
  if (r.certificate) {
    const auto& c = *r.certificate;
    const auto& sys = ens[c.system];
    Json cj;
    cj["system"] = c.system;
    cj["type"] = sys.type(c.type).name;
    cj["vertex"] = sys.type(c.type).frontier[static_cast<std::size_t>(c.vertex)];
    cj["shift"] = c.shift;
    cj["from_step"] = c.from_step;
    cj["to_step"] = c.to_step;
    cj["color_type"] = sys.type(c.color_type).name;
    cj["color_vertex"] = sys.type(c.color_type).frontier[static_cast<std::size_t>(c.color_vertex)];
    cj["phase"] = c.phase;
    cj["from_depth"] = c.from_depth;
    cj["to_depth"] = c.to_depth;
    cj["beyond_bound"] = c.beyond_bound;
    j["certificate"] = std::move(cj);
  } else {
    j["certificate"] = nullptr;
  }
  Json bj;
  bj["raw"] = tb.raw;
  bj["raw_saturated"] = tb.raw_saturated;
  bj["per_circuit"] = tb.per_circuit;
  bj["order_cap"] = tb.order_cap;
  bj["exceeds_u64"] = tb.exceeds_u64;
  j["torsion_bound"] = std::move(bj);
  out << j.dump(2) << "\n";
  err << A.format(w) << ": " << verdict << "\n";
  switch (r.kind) {
    case OrderResult::Kind::kFinite: return kExitOk;
    case OrderResult::Kind::kInfinite: return kExitNegative;
    default: return kExitInconclusive;
  }
}

int cmd_act(const Options& o, std::ostream& out, std::ostream& err) {
  auto spec = load_spec(o.spec);
  const LazyInverseGraph& g = component(spec, o.component);
  Word w = g.alphabet().parse_word(o.word);
  auto v = walk(g, o.second, w);
  Json j;
  j["spec"] = spec.label;
  j["vertex"] = o.second;
  j["word"] = g.alphabet().format(w);
  j["result"] = v ? Json(*v) : Json(nullptr);
  if (spec.oracle && o.component == 0) j["oracle"] = spec.oracle->act(o.second, w);
  out << j.dump(2) << "\n";
  err << o.second << " . " << g.alphabet().format(w) << " = " << (v ? *v : "undefined") << "\n";
  return v ? kExitOk : kExitNegative;
}

int cmd_transducer(const Options& o, std::ostream& out, std::ostream& err) {
  auto spec = load_spec(o.spec);
  Ensemble ens = systems_for(spec, o.d, o.s);
  if (ens.size() != 1) throw InputError("transducer needs a connected graph");
  Transducer t = Transducer::build(ens[0]);
  const int k = t.letters().size();
  if (!o.run.empty()) {
    if (o.run.size() != 2) throw InputError("--run takes STATE and WORD");
    int q = -1;
    for (int i = 0; i < t.state_count(); ++i) {
      if (t.state_name(i) == o.run[0]) q = i;
    }
    if (q < 0) {
      try {
        q = std::stoi(o.run[0]);
      } catch (const std::exception&) {
        throw InputError("unknown state '" + o.run[0] + "'");
      }
      if (q < 0 || q >= t.state_count()) throw InputError("unknown state '" + o.run[0] + "'");
    }
    // Cone letters are parenthesized; spaces between them are optional.
    ConeWord w;
    const std::string& text = o.run[1];
    for (std::size_t i = 0; i < text.size();) {
      if (std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
        continue;
      }
      const std::size_t close = text.find(')', i);
      if (text[i] != '(' || close == std::string::npos) {
        throw InputError("malformed cone word '" + text + "'");
      }
      const std::string tok = text.substr(i, close - i + 1);
      auto id = t.letters().find(tok);
      if (!id) throw InputError("unknown cone letter '" + tok + "'");
      w.push_back(*id);
      i = close + 1;
    }
    auto r = t.run(q, w);
    Json j;
    j["state"] = t.state_name(q);
    j["input"] = t.letters().format(w);
    j["output"] = t.letters().format(r.output);
    j["final_state"] = t.state_name(r.state);
    out << j.dump(2) << "\n";
    err << t.letters().format(w) << " -> " << t.letters().format(r.output) << "\n";
    return kExitOk;
  }
  out << t.to_json().dump(2) << "\n";
  err << t.state_count() << " states, " << k << " cone letters, "
      << static_cast<long>(t.state_count()) * k << " transitions\n";
  return kExitOk;
}

int cmd_infer(const Options& o, std::ostream& out, std::ostream& err) {
  auto spec = load_spec(o.spec);
  const LazyInverseGraph& g = component(spec, o.component);
  auto r = infer_system(g, o.d, o.s);
  if (auto* n = std::get_if<NotStabilized>(&r)) {
    Json j;
    j["stabilized"] = false;
    j["reason"] = n->reason;
    out << j.dump(2) << "\n";
    err << "not stabilized: " << n->reason << "\n";
    return kExitInconclusive;
  }
  const auto& sys = std::get<EndConeSystem>(r);
  out << system_to_json(sys).dump(2) << "\n";
  err << sys.type_count() << " types\n";
  return kExitOk;
}

EndConeSystem load_system(const std::string& arg) {
  std::filesystem::path p(arg);
  std::error_code ec;
  if (std::filesystem::is_regular_file(p, ec)) {
    auto j = read_json_file(p);
    if (j.is_object() && j.contains("kind")) {
      auto r = resolve_spec(j, p.parent_path());
      if (!r.systems || r.systems->size() != 1) throw InputError("'" + arg + "' does not hold one system");
      return (*r.systems)[0];
    }
    return system_from_json(j);
  }
  if (example(arg)) return example_system(arg);
  throw InputError("'" + arg + "' is neither a system file nor an example name");
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  EndConeSystem sys = load_system(o.spec);
  auto spec = load_spec(o.second);
  const LazyInverseGraph& g = component(spec, o.component);
  auto issues = validate(sys);
  Json j;
  if (!issues.empty()) {
    Json list = Json::array();
    for (const auto& i : issues) list.push_back({{"kind", i.kind}, {"type", i.type}, {"message", i.message}});
    j["ok"] = false;
    j["issues"] = std::move(list);
    out << j.dump(2) << "\n";
    err << "invalid system: " << issues[0].message << "\n";
    return kExitVerify;
  }
  if (!(sys.alphabet() == g.alphabet())) throw InputError("system and graph use different alphabets");
  auto r = verify_presentation(sys, g, o.radius);
  j["ok"] = r.ok;
  j["radius"] = o.radius;
  j["direction"] = r.direction;
  j["conflict"] = r.conflict ? conflict_json(sys.alphabet(), *r.conflict) : Json(nullptr);
  out << j.dump(2) << "\n";
  err << (r.ok ? "presentation verified" : "presentation differs") << " to radius " << o.radius << "\n";
  return r.ok ? kExitOk : kExitVerify;
}

int cmd_freeproduct(const Options& o, std::ostream& out, std::ostream& err) {
  auto spec = load_spec(o.spec);
  if (spec.label != "free_product") throw InputError("spec is not a free product");
  return emit_ball(spec.graphs[0], o, out, err);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Context-free inverse graphs, their transition groups and presentations", "cftg"};
  app.require_subcommand(1);
  Options o;

  auto* ex = app.add_subcommand("examples", "List the built-in example graphs");
  ex->add_option("what", o.spec, "Only 'list' is supported")->check(CLI::IsMember({"list"}));

  auto* expand = app.add_subcommand("expand", "Print a ball of a graph");
  expand->add_option("spec", o.spec, "Spec file, '-' or example name")->required();
  expand->add_option("--center", o.center, "Center vertex (default: root)");
  expand->add_option("--radius,-r", o.radius, "Ball radius");
  expand->add_option("--format", o.format, "dot or json");
  expand->add_option("--component", o.component, "Component of a union");

  auto* wp = app.add_subcommand("wp", "Decide whether a word is the identity");
  wp->add_option("spec", o.spec)->required();
  wp->add_option("word", o.word)->required();

  auto* ord = app.add_subcommand("order", "Order of a word's element");
  ord->add_option("spec", o.spec)->required();
  ord->add_option("word", o.word)->required();
  ord->add_option("--max", o.max_exp, "Largest power checked directly");

  auto* act_cmd = app.add_subcommand("act", "Walk a word from a vertex");
  act_cmd->add_option("spec", o.spec)->required();
  act_cmd->add_option("vertex", o.second)->required();
  act_cmd->add_option("word", o.word)->required();
  act_cmd->add_option("--component", o.component);

  auto* tr = app.add_subcommand("transducer", "Build or run the transducer of a system");
  tr->add_option("spec", o.spec)->required();
  tr->add_flag("--build", o.build, "Print the transducer (default)");
  tr->add_option("--run", o.run, "STATE WORD")->expected(2);

  auto* inf = app.add_subcommand("infer", "Infer a cone system from a graph");
  inf->add_option("spec", o.spec)->required();
  inf->add_option("--component", o.component);

  auto* ver = app.add_subcommand("verify", "Check a system against a graph");
  ver->add_option("system", o.spec, "System file or example name")->required();
  ver->add_option("spec", o.second)->required();
  ver->add_option("--r,-r", o.radius, "Radius")->default_val(6);
  ver->add_option("--component", o.component);

  auto* fp = app.add_subcommand("freeproduct", "Expand a free product spec");
  fp->add_option("spec", o.spec)->required();
  fp->add_option("--radius,-r", o.radius);
  fp->add_option("--format", o.format);

  for (auto* sub : {wp, ord, tr, inf}) {
    sub->add_option("--d", o.d, "Probe radius for inference");
    sub->add_option("--s", o.s, "Stabilization depth for inference");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (ex->parsed()) return cmd_examples(out, err);
    if (expand->parsed()) {
      auto spec = load_spec(o.spec);
      return emit_ball(component(spec, o.component), o, out, err);
    }
    if (wp->parsed()) return cmd_wp(o, out, err);
    if (ord->parsed()) return cmd_order(o, out, err);
    if (act_cmd->parsed()) return cmd_act(o, out, err);
    if (tr->parsed()) return cmd_transducer(o, out, err);
    if (inf->parsed()) return cmd_infer(o, out, err);
    if (ver->parsed()) return cmd_verify(o, out, err);
    if (fp->parsed()) return cmd_freeproduct(o, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInconclusive;
  }
  return kExitInput;
}

}  // namespace cftg
