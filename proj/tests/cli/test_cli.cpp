#include "doctest.h"

#include <cstdlib>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cobcalc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("universal law JSON contains -2*b1*x*y") {
  auto r = run({"fgl", "universal", "--degree", "2", "--json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "fgl universal");
  CHECK(j["precision"] == 2);
  bool found = false;
  for (const auto& t : j["result"]["terms"]) {
    if (t["exps"] == nlohmann::json::array({1, 1})) found = t["coeff"] == "-2*b1";
  }
  CHECK(found);
}

TEST_CASE("hrr and decompose goldens") {
  auto h = run({"rr", "hrr", "--n", "0", "--d", "7"});
  CHECK(h.code == 0);
  CHECK(h.out == "1\n");
  CHECK(run({"rr", "hrr", "--n", "3", "--d", "2"}).out == "10\n");

  auto z = run({"zeta", "decompose", "--law", "add", "--mult", "1,1"});
  CHECK(z.code == 0);
  CHECK(z.out == "{1}: 1\n{2}: 1\n{1,2}: 0\n");

  auto zj = nlohmann::json::parse(run({"zeta", "decompose", "--law", "add", "--mult", "1,1", "--json"}).out);
  CHECK(zj["result"]["multiplicities"] == nlohmann::json::array({1, 1}));
  CHECK(zj["result"]["components"]["{1,2}"]["terms"].empty());
}

TEST_CASE("series and matrix commands") {
  CHECK(run({"fgl", "nseries", "--law", "mult", "--n", "3", "--degree", "4"}).out == "3*x - 3*x^2 + x^3\n");
  CHECK(run({"fgl", "inverse", "--law", "x + y + 2*x*y", "--degree", "3"}).out == "-x + 2*x^2 - 4*x^3\n");
  auto pbf = run({"chern", "pbf", "--law", "add", "--ranks", "2", "--caps", "2"});
  CHECK(pbf.code == 0);
  CHECK(pbf.out.find("A^-1 =\n  [x2 + x1, 1]\n  [1, 0]\n") != std::string::npos);

  auto j = nlohmann::json::parse(run({"chern", "pbf", "--law", "mult", "--ranks", "3", "--caps", "2", "--json"}).out);
  CHECK(j["ok"] == true);
  CHECK(j["result"]["u"].size() == 5);
  CHECK(j["result"]["A"].size() == 3);
  CHECK(j["result"]["A_inv"].size() == 3);

  CHECK(run({"chern", "whitney", "--law", "univ", "--degree", "5", "--r1", "2", "--r2", "2"}).code == 0);
  CHECK(run({"chern", "matrix", "--law", "univ", "--degree", "4", "--ranks", "2", "--caps", "1"}).code == 0);
  CHECK(run({"rr", "cf-push", "--ranks", "3", "--caps", "2"}).code == 0);
  CHECK(run({"rr", "identity", "geometric-series", "--degree", "12"}).code == 0);
  CHECK(run({"zeta", "verify", "--law", "univ", "--mult", "1,2", "--degree", "5"}).code == 0);
}

TEST_CASE("output is deterministic") {
  std::vector<std::string> args{"zeta", "decompose", "--law", "univ", "--mult", "2,3", "--degree", "5", "--json"};
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("check failures exit 1 with a witness") {
  auto r = run({"fgl", "check", "--law", "x + y + x*y^2"});
  CHECK(r.code == 1);
  CHECK(r.err.find("commutativity") != std::string::npos);
  CHECK(r.err.find("degree 3") != std::string::npos);

  auto m = run({"selftest", "--mutate-d", "1"});
  CHECK(m.code == 1);
  CHECK(m.err.find("hyperplane_relation") != std::string::npos);
}

TEST_CASE("usage errors exit 2 and name the flag") {
  auto missing = run({"rr", "hrr", "--n", "2"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("--d") != std::string::npos);
  auto mult = run({"zeta", "decompose", "--mult", "0,1"});
  CHECK(mult.code == 2);
  CHECK(mult.err.find("--mult") != std::string::npos);
  auto caps = run({"chern", "pbf", "--ranks", "2", "--caps", "1,2,3"});
  CHECK(caps.code == 2);
  CHECK(caps.err.find("--caps") != std::string::npos);
  CHECK(run({"fgl", "nseries", "--law", "x +* y", "--n", "2"}).code == 2);
  CHECK(run({"fgl", "universal", "--degree", "0"}).code == 2);
  CHECK(run({"selftest", "--profile", "huge"}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--law-file", "/nonexistent.json", "fgl", "check"}).code == 2);
}

TEST_CASE("default degree comes from the environment") {
  ::setenv("COBCALC_DEFAULT_DEGREE", "3", 1);
  CHECK(cobcalc::cli::default_degree() == 3);
  CHECK(run({"fgl", "inverse", "--law", "mult"}).out == "-x - x^2 - x^3\n");
  ::setenv("COBCALC_DEFAULT_DEGREE", "zero", 1);
  CHECK(run({"fgl", "inverse", "--law", "mult"}).code == 2);
  ::unsetenv("COBCALC_DEFAULT_DEGREE");
  CHECK(cobcalc::cli::default_degree() == 6);
}
