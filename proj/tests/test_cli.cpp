// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cftg/cli.hpp"
#include "cftg/examples.hpp"
#include "cftg/pda.hpp"

using namespace cftg;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json js(const Result& r) { return nlohmann::json::parse(r.out); }

fs::path scratch() {
  fs::path d = fs::temp_directory_path() / "cftg_cli_test";
  fs::create_directories(d);
  return d;
}

fs::path write(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("examples and help") {
  auto r = run({"examples", "list"});
  CHECK(r.code == 0);
  CHECK(js(r).size() == 9);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("expand") {
  auto r = run({"expand", "omega", "-r", "1", "--format", "dot"});
  CHECK(r.code == 0);
  std::size_t nodes = 0;
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("  \"", 0) == 0 && line.find("->") == std::string::npos) ++nodes;
  }
  CHECK(nodes == 4);
  auto j = js(run({"expand", "line", "--radius", "2", "--format", "json"}));
  CHECK(j["vertices"].size() == 5);
  CHECK(run({"expand", "omega", "-r", "3"}).out == run({"expand", "omega", "-r", "3"}).out);
  CHECK(run({"expand", "omega", "--center", "q2", "-r", "1", "--format", "json"}).code == 0);
}

TEST_CASE("bad specs exit 2") {
  CHECK(run({"expand", (scratch() / "missing.json").string()}).code == 2);
  CHECK(run({"expand", write("broken.json", "{ not json").string()}).code == 2);
  CHECK(run({"expand", write("kind.json", R"({"kind": "sphere"})").string()}).code == 2);
  CHECK(run({"wp", "omega", "a d"}).code == 2);
  CHECK(run({"expand", "omega", "--format", "svg"}).code == 2);
}

TEST_CASE("word problem and order") {
  auto r = run({"wp", "omega", "c c"});
  CHECK(r.code == 0);
  CHECK(js(r)["identity"] == true);
  auto h = run({"wp", "antenna", "a c' b c a' c' b' c"});
  CHECK(h.code == 1);
  CHECK_FALSE(js(h)["witness"].is_null());
  auto o = run({"order", "omega", "a"});
  CHECK(o.code == 1);
  CHECK(js(o)["verdict"] == "infinite (certified)");
  auto c5 = run({"order", "cycle5", "a"});
  CHECK(c5.code == 0);
  CHECK(js(c5)["order"] == 5);
  CHECK(js(c5)["torsion_bound"]["order_cap"] == 840);
}

TEST_CASE("act") {
  auto r = run({"act", "comb", "z(0,0)", "c a"});
  CHECK(r.code == 0);
  CHECK(js(r)["result"] == "z(1,0)");
  CHECK(js(r)["oracle"] == "z(1,0)");
}

TEST_CASE("transducer") {
  auto r = run({"transducer", "omega", "--build"});
  CHECK(r.code == 0);
  CHECK(r.err.find("states") != std::string::npos);
  CHECK(js(r)["sink"] == "E");
  auto run_r = run({"transducer", "line", "--run", "init_a", "(*)(0.0)(1.0:w)"});
  CHECK(run_r.code == 0);
  CHECK(js(run_r)["output"] == "(*)(0.0)(1.0)(1.0:w)");
  CHECK(js(run_r)["final_state"] == "E");
  CHECK(run({"transducer", "line", "--run", "init_a", "(*) (9.9)"}).code == 2);
}

TEST_CASE("infer then verify") {
  auto r = run({"infer", "line", "--d", "6", "--s", "2"});
  REQUIRE(r.code == 0);
  CHECK(js(r)["types"].size() == 3);
  fs::path sys = write("line_system.json", r.out);
  CHECK(run({"verify", sys.string(), "line", "-r", "10"}).code == 0);
  CHECK(run({"verify", "line", "cycle5"}).code == 4);
  CHECK(run({"verify", sys.string(), "omega"}).code == 2);  // alphabets differ
}

TEST_CASE("spec files") {
  fs::path pda = write("counter.json", pda_to_json(signed_counter_pda()).dump());
  fs::path spec = write("counter_spec.json", R"({"kind": "pda", "pda": {"file": "counter.json"}})");
  auto r = run({"infer", spec.string(), "--d", "7", "--s", "2"});
  CHECK(r.code == 0);
  CHECK(js(r)["types"].size() == 3);
  (void)pda;

  fs::path comb_spec = write("comb_product.json", R"({
    "kind": "free_product", "alphabet": ["a", "c"],
    "left": [{"graph": {"kind": "line", "letter": "c"}, "glue": 1}],
    "right": [{"graph": {"kind": "line", "letter": "a"}, "glue": 0},
              {"graph": {"kind": "finite", "generators": ["a"], "vertices": ["o"],
                         "edges": [["o", "a", "o"]], "root": "o"}, "glue": 0}]})");
  auto fp = run({"freeproduct", comb_spec.string(), "-r", "3", "--format", "json"});
  CHECK(fp.code == 0);
  CHECK(js(fp)["vertices"].size() == expand_ball(comb().graph, comb().graph.root(), 3).vertices.size());
  CHECK(run({"wp", comb_spec.string(), "c a c' c^2 a c^-2 c a' c' c^2 a' c^-2"}).code == 0);
  CHECK(run({"freeproduct", "omega"}).code == 2);

  fs::path u = write("union.json", R"({"kind": "union", "parts": [{"kind": "line", "letter": "a"},
                                                                 {"kind": "line", "letter": "b"}]})");
  CHECK(run({"wp", u.string(), "a b a' b'"}).code == 0);
  CHECK(run({"wp", u.string(), "a b"}).code == 1);
}
