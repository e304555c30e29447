#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = catalania::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("catalania_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

int exit_status(const std::string& command) {
  const int raw = std::system(command.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

}  // namespace

TEST_CASE("seq") {
  auto r = run({"seq", "--beta", "2", "--gamma", "1", "--n", "5"});
  CHECK(r.code == 0);
  CHECK(r.out == "1\n1\n2\n5\n14\n42\n");
  CHECK(run({"seq", "--beta", "2", "--gamma", "1", "--n", "0"}).out == "1\n");
  CHECK(run({"seq", "--beta", "1/2", "--gamma", "-1", "--n", "2"}).out == "1\n-1\n1/2\n");

  r = run({"seq", "--beta", "2", "--gamma", "1", "--n", "3", "--format", "json"});
  CHECK(Json::parse(r.out) == Json::parse(R"(["1", "1", "2", "5"])"));

  r = run({"seq", "--beta", "x", "--gamma", "1", "--n", "3"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--beta") != std::string::npos);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(run({"seq", "--beta", "2", "--gamma", "1"}).code == 2);
  CHECK(run({"seq", "--beta", "2", "--gamma", "1", "--n", "1/2"}).code == 2);
  CHECK(run({"seq", "--beta", "2", "--gamma", "1", "--n", "2", "--format", "xml"}).code == 2);
}

TEST_CASE("top-level usage") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  const auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("verify") != std::string::npos);
  CHECK(run({"trees", "--help"}).code == 0);
}

TEST_CASE("trees") {
  auto r = run({"trees", "count", "--beta", "3", "--n", "2", "--gamma", "1", "--check-formula"});
  CHECK(r.code == 0);
  CHECK(r.out == "3 == 3 OK\n");
  CHECK(run({"trees", "list", "--beta", "2", "--n", "1"}).out == "(oo)\n");
  CHECK(run({"trees", "list", "--beta", "2", "--n", "1", "--format", "paren"}).out == "(oo)\n");
  CHECK(run({"trees", "count", "--beta", "2", "--n", "4", "--gamma", "3"}).out == "90\n");
  CHECK(run({"trees", "list", "--beta", "2", "--n", "1", "--gamma", "2", "--format", "json"}).out ==
        "[\n  \"o;(oo)\",\n  \"(oo);o\"\n]\n");

  r = run({"trees", "count", "--outdegrees", "2,3", "--counts", "1,1", "--check-formula"});
  CHECK(r.code == 0);
  CHECK(r.out == "5 == 5 OK\n");

  r = run({"trees", "count", "--beta", "2", "--n", "40"});
  CHECK(r.code == 2);
  CHECK(r.err.find("CATALANIA_MAX_STRUCTS") != std::string::npos);

  ::setenv("CATALANIA_MAX_STRUCTS", "10", 1);
  CHECK(run({"trees", "count", "--beta", "2", "--n", "5"}).code == 2);
  CHECK(run({"trees", "count", "--beta", "2", "--n", "3"}).code == 0);
  ::setenv("CATALANIA_MAX_STRUCTS", "many", 1);
  CHECK(run({"trees", "count", "--beta", "2", "--n", "3"}).code == 2);
  ::unsetenv("CATALANIA_MAX_STRUCTS");

  CHECK(run({"trees", "count", "--beta", "0", "--n", "1"}).code == 2);
  CHECK(run({"trees", "count", "--n", "1"}).code == 2);
  CHECK(run({"trees", "count", "--beta", "2", "--n", "1", "--outdegrees", "2"}).code == 2);
  CHECK(run({"trees", "count", "--outdegrees", "3,2", "--counts", "1,1"}).code == 2);
  CHECK(run({"trees", "count", "--outdegrees", "2,3"}).code == 2);
  CHECK(run({"trees", "sort", "--beta", "2", "--n", "1"}).code == 2);
}

TEST_CASE("involution") {
  auto r = run({"involution", "--beta", "3", "--n", "3", "--alpha", "1", "--gamma", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "sum=0 rhs=0 OK\n");
  CHECK(run({"involution", "--beta", "2", "--n", "0", "--alpha", "1", "--gamma", "1"}).out == "sum=1 rhs=1 OK\n");
  CHECK(run({"involution", "--beta", "2", "--n", "2", "--alpha", "3", "--gamma", "1"}).out == "sum=1 rhs=1 OK\n");

  r = run({"involution", "--beta", "2", "--n", "2", "--alpha", "3", "--gamma", "1", "--dump-pairs"});
  CHECK(r.code == 0);
  CHECK(r.out.find("pair P[2:.,.]|(o*o) <-> P[2:.,.]|((oo)o)\n") != std::string::npos);
  CHECK(r.out.find("exceptional P[2:*,*]|o\n") != std::string::npos);

  r = run({"involution", "--beta", "2", "--n", "2", "--alpha", "3", "--gamma", "1", "--format", "json"});
  const Json j = Json::parse(r.out);
  CHECK(j["sum"] == "1");
  CHECK(j["match"] == true);
  CHECK(j["exceptional"] == 1);

  CHECK(run({"involution", "--beta", "2", "--n", "2", "--alpha", "1", "--gamma", "2"}).code == 2);
  CHECK(run({"involution", "--beta", "2", "--n", "2", "--alpha", "0", "--gamma", "0"}).code == 2);
  CHECK(run({"involution", "--beta", "3", "--n", "12", "--alpha", "3", "--gamma", "1"}).code == 2);
}

TEST_CASE("riordan") {
  CHECK(run({"riordan", "entry", "--alpha", "1", "--beta", "2", "--n", "2", "--k", "1"}).out == "-2\n");
  CHECK(run({"riordan", "entry", "--alpha", "1", "--beta", "2", "--n", "1", "--k", "3"}).out == "0\n");
  const auto r = run({"riordan", "check", "--alpha", "2", "--beta", "3", "--gamma", "1", "--order", "12"});
  CHECK(r.code == 0);
  CHECK(r.out == "Eq5 OK, Eq6 OK\n");

  const std::string g = temp_file("g.json", R"({"order": 6, "coeffs": [1, 1, 1, 1, 1, 1, 1]})");
  const std::string f = temp_file("f.json", R"({"order": 6, "coeffs": ["0", "1", "1", "1", "1", "1", "1"]})");
  CHECK(run({"riordan", "entry", "--g", g, "--f", f, "--n", "5", "--k", "2"}).out == "10\n");
  CHECK(run({"riordan", "entry", "--g", g, "--f", f, "--n", "9", "--k", "2"}).code == 2);

  // A = 1, L = g holds for any array; perturbing L breaks both theorems.
  const std::string a = temp_file("a.json", R"({"order": 6, "coeffs": ["1"]})");
  const std::string bad_l = temp_file("l.json", R"({"order": 6, "coeffs": [1, 1, 1, 2, 1, 1, 1]})");
  CHECK(run({"riordan", "check", "--g", g, "--f", f, "--a", a, "--l", g}).out == "Eq5 OK, Eq6 OK\n");
  const auto broken = run({"riordan", "check", "--g", g, "--f", f, "--a", a, "--l", bad_l});
  CHECK(broken.code == 1);
  CHECK(broken.out == "Eq5 FAIL, Eq6 FAIL\n");

  const std::string malformed = temp_file("bad.json", R"({"coeffs": [1, 2)");
  CHECK(run({"riordan", "entry", "--g", malformed, "--f", f, "--n", "1", "--k", "0"}).code == 2);
  const std::string float_coeff = temp_file("float.json", R"({"coeffs": [1.5]})");
  CHECK(run({"riordan", "entry", "--g", float_coeff, "--f", f, "--n", "1", "--k", "0"}).code == 2);
  const std::string bad_f = temp_file("badf.json", R"({"coeffs": [1, 1]})");
  CHECK(run({"riordan", "entry", "--g", g, "--f", bad_f, "--n", "1", "--k", "0"}).code == 2);
  CHECK(run({"riordan", "entry", "--g", "/nonexistent/g.json", "--f", f, "--n", "1", "--k", "0"}).code == 2);
  CHECK(run({"riordan", "entry", "--alpha", "1", "--g", g, "--n", "1", "--k", "0"}).code == 2);
  CHECK(run({"riordan", "check", "--alpha", "1", "--beta", "2"}).code == 2);
}

TEST_CASE("verify") {
  auto r = run({"verify"});
  CHECK(r.code == 0);
  const Json report = Json::parse(r.out);
  REQUIRE(report.is_array());
  CHECK(report.size() == 11);
  for (const Json& entry : report) CHECK(entry["status"] == "pass");
  CHECK(run({"verify"}).out == r.out);
  CHECK(run({"verify", "--config", std::string(CATALANIA_SOURCE_DIR) + "/config/default.json"}).out == r.out);

  CHECK(run({"verify", "--config", "/nonexistent/config.json"}).code == 2);
  CHECK(run({"verify", "--config", temp_file("unknown.json", R"({"eq99": {}})")}).code == 2);
  CHECK(run({"verify", "--config", temp_file("broken.json", "{")}).code == 2);

  const std::string corrupt = temp_file(
      "corrupt.json",
      R"({"eq2": {"alpha": [1], "beta": [2], "gamma": [1], "n_max": 4}, "test_hooks": {"corrupt_catalan": true}})");
  r = run({"verify", "--config", corrupt});
  CHECK(r.code == 1);
  const Json failed = Json::parse(r.out);
  CHECK(failed[0]["status"] == "fail");
  CHECK(failed[0]["counterexample"]["params"]["n"] == "3");

  r = run({"verify", "--config", corrupt, "--format", "text"});
  CHECK(r.out.find("Eq2 FAIL") != std::string::npos);
  CHECK(r.out.find("counterexample: alpha=1 beta=2 gamma=1 n=3") != std::string::npos);
}

TEST_CASE("exit codes of the installed binary") {
  const std::string bin = CATALANIA_CLI_PATH;
  CHECK(exit_status(bin + " seq --beta 2 --gamma 1 --n 3 > /dev/null") == 0);
  CHECK(exit_status(bin + " seq --beta x --gamma 1 --n 3 > /dev/null 2>&1") == 2);
  CHECK(exit_status(bin + " trees count --beta 2 --n 40 > /dev/null 2>&1") == 2);
  CHECK(exit_status(bin + " verify --config /nonexistent > /dev/null 2>&1") == 2);
}
