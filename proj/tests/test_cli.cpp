#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "doctest.h"
#include "monotor/cli.hpp"
#include "monotor/errors.hpp"

using monotor::cli::RunOptions;
using monotor::cli::run;
using nlohmann::json;

namespace {

const std::string kLine = R"({"variables":["X0"],"grading":{"ambient_rank":1,"degrees":[[1]]}})";
const std::string kP1 = R"({"rank":1,"rays":[[1],[-1]],"cones":[[0],[1]]})";
const std::string kP2 = R"({"rank":2,"rays":[[1,0],[0,1],[-1,-1]],"cones":[[0,1],[1,2],[0,2]]})";

json call(const std::string& cmd, const std::string& input, RunOptions opt = {}) {
  return json::parse(run(cmd, input, opt));
}

std::string schema_message(const std::string& cmd, const std::string& input) {
  try {
    run(cmd, input, {});
  } catch (const monotor::SchemaError& e) {
    return e.what();
  }
  return "";
}

json window(long a, long b) {
  json out = json::array();
  for (long g = a; g <= b; ++g) out.push_back(json::array({g}));
  return out;
}

int exit_code(const std::string& args) {
  const std::string cmd = std::string(MONOTOR_EXE) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("command table") {
  CHECK(monotor::cli::command_names().size() == 17);
  CHECK_THROWS_AS(run("no-such-command", "{}", {}), monotor::SchemaError);
}

TEST_CASE("report envelope") {
  const std::string text = run("nil-index", R"({"base_ring":{"variant":"IntegersMod","params":{"modulus":12}}})", {});
  const json r = json::parse(text);
  CHECK(r["nil_index"] == 2);
  CHECK(r["version"] == "monotor/1");
  CHECK(r["command"] == "nil-index");
  CHECK(r["unverified_hypotheses"].is_array());
  // sorted keys, newline terminated, byte-stable
  CHECK(text.back() == '\n');
  CHECK(text.find("\"command\"") < text.find("\"nil_index\""));
  CHECK(text == run("nil-index", R"({"base_ring":{"params":{"modulus":12},"variant":"IntegersMod"}})", {}));
}

TEST_CASE("gamma-eq and gamma-compare") {
  const std::string in = R"({"ring":)" + kLine + R"(,"a":{"gens":[[4]]},"b":{"gens":[[2]]}})";
  const json r = call("gamma-eq", in);
  CHECK(r["equal"] == true);
  CHECK(r["floor"] == json::parse("[[1]]"));

  const json ne = call("gamma-eq", R"({"a":{"gens":[[1,0]]},"b":{"gens":[[1,1]]}})");
  CHECK(ne["equal"] == false);
  CHECK_FALSE(ne.contains("floor"));

  const json c = call("gamma-compare", R"({"a":{"gens":[[1,1]]},"b":{"gens":[[1,0]]}})");
  CHECK(c["relation"] == "right-subfunctor");
  CHECK(c["a_power_in_b"] == 1);
  CHECK(c["b_power_in_a"].is_null());
}

TEST_CASE("floor, restrict, m-mu, gamma-restricted") {
  CHECK(call("floor", R"({"ideal":{"gens":[[2,1,0],[0,0,3]]}})")["floor"] == json::parse("[[0,0,1],[1,1,0]]"));
  const std::string half = R"({"ring":)" + kLine + R"(,"subgroup":{"generators":[[2]]},"ideal":{"gens":[[4]]}})";
  const json r = call("restrict", half);
  CHECK(r["restricted"] == json::parse("[[4]]"));
  CHECK(r["floor_H"] == json::parse("[[4]]"));
  CHECK(r["floor_restricted"] == json::parse("[[2]]"));
  CHECK(r["index"] == 2);

  const std::string mu = R"({"ring":)" + kLine + R"(,"subgroup":{"generators":[[2]]},"ideal":{"gens":[[4]]},"mu":[4]})";
  CHECK(call("m-mu", mu)["m_mu"] == 4);

  const std::string gr =
      R"({"ring":)" + kLine + R"(,"subgroup":{"generators":[[2]]},"a":{"gens":[[4]]},"b":{"gens":[[2]]}})";
  const json g = call("gamma-restricted", gr);
  CHECK(g["equal"] == true);
  CHECK(g["floor_H_equal"] == false);
  CHECK(g["floor_H_a"] == json::parse("[[4]]"));
  CHECK(g["floor_H_b"] == json::parse("[[2]]"));

  const json fi = call("floor-identity", half);
  CHECK(fi["p"] == 2);
  CHECK(fi["q"] == 2);
}

TEST_CASE("big integers are strings") {
  const std::string in =
      R"({"ring":)" + kLine + R"(,"subgroup":{"generators":[["123456789012345678901234567890"]]},"ideal":{"gens":[[1]]}})";
  // the restriction box is too large to enumerate, but the index is readable first
  CHECK_THROWS_AS(run("restrict", in, {}), monotor::DomainError);
  const std::string pic = R"({"fan":{"rank":1,"rays":[["99999999999999999999"],[-1]],"cones":[[0],[1]]}})";
  const json f = call("fan-cox", pic);
  CHECK(f["fan"]["rays"] == json::parse("[[1],[-1]]"));
  CHECK(f["fan"]["warnings"].size() == 1);
}

TEST_CASE("base ring commands") {
  const json t = call("nil-index", R"({"base_ring":{"variant":"TruncatedPolynomial","params":{"exponents":[1,2,3]}}})");
  CHECK(t["nil_index"] == 4);
  const json u = call("nil-index", R"({"base_ring":{"variant":"TruncatedFamilyUnbounded"}})");
  CHECK(u["nil_index"] == "infinite");
  CHECK(u["gamma_floor_eq_radical"] == false);

  const json rp =
      call("radical-power", R"({"base_ring":{"variant":"IntegersMod","params":{"modulus":12}},"ideal":{"gens":[[2]]}})");
  CHECK(rp["in_ideal"] == 3);
  CHECK(rp["in_floor"] == 2);

  const json w = call("witness", R"({"base_ring":{"variant":"TruncatedFamilyUnbounded"},"n":3})");
  CHECK(w["witness"]["truncation"].size() == 4);
  const json nw = call("witness", R"({"family":{"c":1,"d":0},"n":3})");
  CHECK(nw["level"] == 4);
  CHECK(nw["monomial"] == json::parse("[0,0,0,3]"));
}

TEST_CASE("cech and degsupp") {
  const std::string p1ring = R"({"grading":{"ambient_rank":1,"degrees":[[1],[1]]}})";
  const json c = call("cech", R"({"ring":)" + p1ring + R"(,"sequence":[[1,0],[0,1]],"degree":-4,"box":8})");
  CHECK(c["groups"][2]["rank"] == 3);
  CHECK(c["exact"] == true);
  CHECK(c["unverified_hypotheses"] == json::parse(R"(["ITI"])"));

  const json d = call("degsupp", R"({"ring":)" + p1ring + R"(,"sequence":[[1,0],[0,1]],"window":{"from":-3,"to":3}})");
  CHECK(d["degsupp"] == json::parse("[[-3],[-2]]"));
  RunOptions opt;
  opt.window = std::make_pair(-5L, 5L);
  const json d2 = call("degsupp", R"({"ring":)" + p1ring + R"(,"sequence":[[1,0],[0,1]]})", opt);
  CHECK(d2["degsupp"] == json::parse("[[-5],[-4],[-3],[-2]]"));

  // Z coefficients through the base ring; Z/n is rejected
  const json z = call("cech", R"({"ring":)" + p1ring +
                                  R"(,"sequence":[[1,0],[0,1]],"degree":[-2],"base_ring":{"variant":"Integers"}})");
  CHECK(z["groups"][2]["rank"] == 1);
  CHECK_THROWS_AS(run("cech",
                      R"({"ring":)" + p1ring +
                          R"(,"sequence":[[1,0]],"degree":[0],"base_ring":{"variant":"IntegersMod","params":{"modulus":4}}})",
                      {}),
                  monotor::DomainError);
}

TEST_CASE("toric commands") {
  const json cox = call("fan-cox", R"({"fan":)" + kP2 + "}");
  CHECK(cox["degrees"] == json::parse("[[1],[1],[1]]"));
  CHECK(cox["group"]["invariant_factors"] == json::parse("[0]"));
  CHECK(cox["fan"]["rays"].size() == 3);

  const std::string p112 = R"({"rank":2,"rays":[[1,0],[-1,-2],[0,1]],"cones":[[0,1],[1,2],[0,2]]})";
  CHECK(call("fan-pic", R"({"fan":)" + p112 + "}")["index"] == 2);
  CHECK(call("fan-pic", R"({"fan":)" + kP1 + "}")["equals_A"] == true);

  const json irr = call("irrelevant", R"({"fan":)" + kP2 + "}");
  CHECK(irr["irrelevant"] == json::parse("[[0,0,1],[0,1,0],[1,0,0]]"));
  CHECK(irr["cones"].size() == 7);

  const json fi = call("floor-identity", R"({"fan":)" + kP1 + R"(,"B":{"generators":[[2]]}})");
  CHECK(fi["gamma_equal"] == true);
  CHECK(fi["ideals_equal"] == false);
  CHECK(fi["b_index"] == 2);

  const json fr = call("flat-report", R"({"fan":)" + kP1 + R"(,"window":{"from":[-5],"to":[5]}})");
  CHECK(fr["degsupp"] == window(-5, -2));
  CHECK(fr["flat_eligible"] == window(-1, 5));
  CHECK(fr["hypotheses"]["b_subset_pic"] == "yes");
  CHECK(fr["hypotheses"]["localized_flatness"] == "not-asserted");
  CHECK(fr["unverified_hypotheses"] == json::parse(R"(["ITI","sheaf-flatness"])"));

  const json zero = call("flat-report", R"({"fan":)" + kP1 +
                                            R"(,"module":{"quotient":[[0,0]]},"window":{"from":-5,"to":5},)"
                                            R"("localized_flatness":true,"presentation":[[2,0],[0,1]]})");
  CHECK(zero["degsupp"].empty());
  CHECK(zero["hypotheses"]["localized_flatness"] == "asserted-by-user");
  CHECK(zero["presentation_flat"] == false);
}

TEST_CASE("oracle-agree") {
  RunOptions opt;
  opt.seed = 7;
  const json r = call("oracle-agree", R"({"trials":200})", opt);
  CHECK(r["disagreements"] == 0);
  CHECK(r["seed"] == 7);
  CHECK(run("oracle-agree", R"({"trials":200})", opt) == run("oracle-agree", R"({"trials":200})", opt));
}

TEST_CASE("schema diagnostics") {
  CHECK(schema_message("floor", R"({"ideal":{"gens":[[1,-2]]}})") == "$.ideal.gens[0][1]: expected a nonnegative integer");
  CHECK(schema_message("floor", R"({"ideal":{"gens":[[1]]},"extra":1})") == "$.extra: unknown field");
  CHECK(schema_message("restrict", R"({"ring":{"grading":{"ambient_rank":1,"degrees":[[1]],"bogus":[]}},"ideal":{"gens":[]}})") ==
        "$.ring.grading.bogus: unknown field");
  CHECK(schema_message("gamma-eq", R"({"a":{"gens":[[1]]}})") == "$.b: required field is missing");
  CHECK(schema_message("floor", "{\n  \"ideal\": {\"gens\": [[1]]\n}") .rfind("line 3", 0) == 0);
  CHECK(schema_message("floor", R"({"ideal":{"gens":[[1],[1,2]]}})") == "$.ideal.gens[1]: expected 1 exponents, got 2");
  CHECK(schema_message("floor", R"({"ideal":{"gens":[]}})").find("cannot infer") != std::string::npos);
  CHECK(schema_message("nil-index", R"({"base_ring":{"variant":"Quaternions"}})") ==
        "$.base_ring.variant: unknown base ring variant 'Quaternions'");
  CHECK(schema_message("flat-report", R"({"fan":)" + kP1 + R"(,"B":"half"})").find("$.B") == 0);
}

TEST_CASE("domain errors") {
  const std::string inf = R"({"ring":)" + kLine + R"(,"subgroup":{"generators":[[0]]},"ideal":{"gens":[[1]]}})";
  CHECK_THROWS_AS(run("restrict", inf, {}), monotor::InfiniteIndex);
  CHECK_THROWS_WITH_AS(run("fan-cox", R"({"fan":{"rank":1,"rays":[[1],[-1]],"cones":[[0,1]]}})", {}),
                       "cone is not strongly convex", monotor::DomainError);
  CHECK_THROWS_AS(run("nil-index", R"({"base_ring":{"variant":"IntegersMod","params":{"modulus":1}}})", {}),
                  monotor::DomainError);
}

TEST_CASE("executable exit codes") {
  const std::string dir = MONOTOR_TEST_DATA;
  CHECK(exit_code("nil-index --in " + dir + "/nil_index.json") == 0);
  CHECK(exit_code("nil-index --in " + dir + "/missing.json") == 3);
  CHECK(exit_code("nosuch --in " + dir + "/nil_index.json") == 3);
  CHECK(exit_code("nil-index") == 3);
  CHECK(exit_code("flat-report --in " + dir + "/p1_flat.json --window 3,1") == 3);
  CHECK(exit_code("restrict --in " + dir + "/infinite_index.json") == 2);
  CHECK(exit_code("--help") == 0);

  const std::string out = std::string(MONOTOR_TEST_OUT) + "/cli_out.json";
  REQUIRE(exit_code("gamma-eq --in " + dir + "/gamma_eq.json --out " + out) == 0);
  std::ifstream f(out);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(json::parse(ss.str())["equal"] == true);
}

TEST_CASE("input schema covers every accepted field") {
  std::ifstream f(std::string(MONOTOR_DOCS) + "/schema/v1/input.schema.json");
  const json schema = json::parse(f);
  for (const char* key : {"ring", "subgroup", "ideal", "a", "b", "mu", "base_ring", "family", "n", "fan", "B", "module",
                          "sequence", "degree", "window", "box", "localized_flatness", "presentation", "trials",
                          "variables", "max_exponent", "max_gens"})
    CHECK(schema["properties"].contains(key));
  std::ifstream r(std::string(MONOTOR_DOCS) + "/schema/v1/report.schema.json");
  CHECK(json::parse(r)["properties"]["version"]["const"] == monotor::cli::kSchemaVersion);
}
