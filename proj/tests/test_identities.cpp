#include <doctest.h>

#include <fstream>
#include <vector>

#include "catalania/identities.hpp"
#include "oracles.hpp"

using namespace catalania;
using Json = nlohmann::json;

namespace {

std::vector<Rat> ints(std::initializer_list<std::int64_t> v) {
  std::vector<Rat> out;
  for (auto x : v) out.emplace_back(x);
  return out;
}

std::string param(const Counterexample& c, const std::string& name) {
  for (const auto& [k, v] : c.params) {
    if (k == name) return v;
  }
  return {};
}

}  // namespace

TEST_CASE("alternating sum examples") {
  const auto eq1 = verify_eq1(8);
  CHECK(eq1.passed());
  CHECK(eq1.checked == 9);
  for (std::size_t n = 0; n <= 8; ++n) CHECK(eq2_lhs(Rat(1), Rat(2), Rat(1), n) == kronecker(n));

  CHECK(eq2_lhs(Rat(3), Rat(2), Rat(1), 2) == Rat(1));
  CHECK(eq2_rhs(Rat(3), Rat(1), 2) == Rat(1));
  for (const Rat& g : {Rat(-2), Rat(1, 3), Rat(4)}) {
    for (std::size_t n = 0; n <= 6; ++n) CHECK(eq2_rhs(g, g, n) == kronecker(n));
  }
  CHECK(verify_eq2(Rat(7, 3), Rat(-5, 2), Rat(1, 4), 10).passed());
}

TEST_CASE("the reindexed sum agrees term by term") {
  oracle::Gen gen(oracle::kSeed);
  for (int trial = 0; trial < 50; ++trial) {
    const Rat a = gen.rational(), b = gen.rational(), c = gen.rational();
    const auto n = static_cast<std::size_t>(gen.integer(0, 9));
    CHECK(eq4_lhs(a, b, c, n) == eq2_lhs(a, b, c, n));
    CHECK(eq2_lhs(a, b, c, n) == eq2_rhs(a, c, n));
  }
}

TEST_CASE("a corrupted Catalan sequence is caught with a counterexample") {
  const CatalanFn broken = [](std::size_t n, const Rat& beta, const Rat& gamma) {
    return catalan_gen(n, beta, gamma) + (n == 4 ? Rat(1) : Rat(0));
  };
  const auto r = verify_eq2(Rat(3), Rat(2), Rat(1), 6, broken);
  REQUIRE_FALSE(r.passed());
  CHECK(param(*r.failure, "n") == "4");
  CHECK(param(*r.failure, "alpha") == "3");
  CHECK(r.failure->lhs != r.failure->rhs);
  CHECK_FALSE(verify_eq1(6, broken).passed());
}

TEST_CASE("vector identity examples") {
  const VecProfile one_one({1, 1}, {2, 3});
  CHECK(eq3_lhs(one_one, 1, Rat(1)) == Rat(0));
  CHECK(eq3_rhs(one_one, 1, Rat(1)) == Rat(0));
  CHECK(eq3_lhs(one_one, 1, Rat(4)) == Rat(6));
  CHECK(eq3_rhs(one_one, 1, Rat(4)) == Rat(6));
  CHECK(verify_eq3(VecProfile({0, 0}, {2, 3}), 2, Rat(-7, 2), 4).passed());
  CHECK(verify_eq3(VecProfile({0, 0, 0}, {1, 2, 4}), 1, Rat(5, 3), 3).passed());
}

TEST_CASE("one outdegree class reduces to the scalar identity") {
  for (std::size_t beta = 1; beta <= 4; ++beta) {
    for (std::size_t gamma = 0; gamma <= 3; ++gamma) {
      for (std::int64_t alpha = -3; alpha <= 4; ++alpha) {
        for (std::size_t n = 0; n <= 6; ++n) {
          const VecProfile p({n}, {beta});
          CHECK(eq3_lhs(p, gamma, Rat(alpha)) == eq2_lhs(Rat(alpha), to_rat(beta), to_rat(gamma), n));
        }
      }
    }
  }
}

TEST_CASE("Gould pair") {
  const GouldPair catalan_pair{Rat(2), Rat(0), Rat(1)};
  const auto seq = ints({1, 1, 2, 5, 14});
  CHECK(gould_backward(gould_forward(seq, catalan_pair), catalan_pair) == seq);

  const GouldPair frozen{Rat(3), Rat(-1, 2), Rat(0)};
  CHECK(gould_forward(seq, frozen) == seq);
  CHECK(gould_backward(seq, frozen) == seq);

  for (std::int64_t alpha = 0; alpha <= 3; ++alpha) {
    for (std::int64_t beta = 1; beta <= 3; ++beta) {
      for (std::int64_t gamma = 1; gamma <= 2; ++gamma) {
        const GouldPair induced{Rat(beta - 1), Rat(alpha), Rat(-1)};
        const auto b = gould_forward(catalan_sequence(Rat(beta), Rat(gamma), 8), induced);
        for (std::size_t n = 0; n <= 8; ++n) CHECK(b[n] == eq2_rhs(Rat(alpha), Rat(gamma), n));
      }
    }
  }

  const GouldPair singular{Rat(1), Rat(-2), Rat(1)};
  CHECK(gould_singular_index(singular, 5) == std::optional<std::size_t>(2));
  CHECK(gould_singular_index(singular, 2) == std::nullopt);
  try {
    gould_backward(seq, singular);
    FAIL("expected a singular-parameter error");
  } catch (const SingularParameterError& e) {
    CHECK(e.index() == 2);
  }
}

TEST_CASE("property: Gould roundtrips on random sequences") {
  oracle::Gen gen(oracle::kSeed + 5);
  int checked = 0;
  while (checked < 30) {
    const GouldPair p{gen.rational(3, 2), gen.rational(4, 3), gen.rational(3, 3)};
    if (gould_singular_index(p, 8)) continue;
    const auto s = gen.rationals(8);
    CHECK(gould_backward(gould_forward(s, p), p) == s);
    CHECK(gould_forward(gould_backward(s, p), p) == s);
    ++checked;
  }
}

TEST_CASE("inverse-relation formula for Catalan numbers") {
  CHECK(eq10_rhs(Rat(0), Rat(2), Rat(1), 1) == std::optional<Rat>(Rat(1)));
  CHECK(verify_eq10(Rat(0), Rat(2), Rat(1), 10).passed());
  for (std::int64_t beta = 0; beta <= 4; ++beta) {
    for (std::int64_t gamma = -2; gamma <= 3; ++gamma) {
      CHECK(verify_eq10(Rat(0), Rat(beta), Rat(gamma), 10).passed());
      CHECK(verify_eq10(Rat(gamma), Rat(beta), Rat(gamma), 10).passed());
    }
  }
  // (1 - beta) n - alpha vanishes at n = 1 for beta = 2, alpha = -1.
  const auto r = verify_eq10(Rat(-1), Rat(2), Rat(1), 4);
  CHECK(r.passed());
  CHECK(r.checked == 3);
  REQUIRE(r.skipped.size() == 1);
  CHECK(r.skipped[0].find("n=1") != std::string::npos);
  CHECK_FALSE(eq10_rhs(Rat(-1), Rat(2), Rat(1), 1).has_value());
}

TEST_CASE("closed-form reduction chain") {
  const auto r = closed_form_reduction_check(Rat(2), Rat(1), 10);
  CHECK(r.passed());
  CHECK(r.checked == 10);
  CHECK(catalan_gen(3, Rat(2), Rat(1)) == Rat(5));
  CHECK(closed_form_reduction_check(Rat(1), Rat(3), 10).passed());
  CHECK(closed_form_reduction_check(Rat(5, 2), Rat(-3, 2), 10).passed());
}

TEST_CASE("ParamRange") {
  const auto half = ParamRange::interval(Rat(-1), Rat(1), Rat(1, 2));
  CHECK(half.values == std::vector<Rat>{Rat(-1), Rat(-1, 2), Rat(0), Rat(1, 2), Rat(1)});
  CHECK(half.text == "-1..1 step 1/2");
  CHECK(ParamRange::interval(Rat(2), Rat(1)).values.empty());
  CHECK_THROWS_AS(ParamRange::interval(Rat(0), Rat(1), Rat(0)), std::invalid_argument);
  CHECK(ParamRange::list(ints({3, 1})).text == "{3, 1}");
}

TEST_CASE("config parsing") {
  CHECK(run_suite(parse_suite_config(Json::object())).empty());
  CHECK_THROWS_AS(parse_suite_config(Json::parse(R"({"eq11": {}})")), ConfigError);
  CHECK_THROWS_AS(parse_suite_config(Json::parse(R"([1])")), ConfigError);
  CHECK_THROWS_AS(parse_suite_config(Json::parse(R"({"eq2": {"alpha": [1], "beta": [1]}})")), ConfigError);
  CHECK_THROWS_AS(parse_suite_config(Json::parse(R"({"eq2": {"alpha": ["x"], "beta": [1], "gamma": [1]}})")),
                  ConfigError);
  CHECK_THROWS_AS(parse_suite_config(Json::parse(R"({"eq1": {"n_max": -1}})")), ConfigError);
  CHECK_THROWS_AS(parse_suite_config(Json::parse(R"({"eq1": {"n": 3}})")), ConfigError);
  CHECK_THROWS_AS(parse_suite_config(Json::parse(R"({"eq4": {"beta": ["1/2"], "gamma": [1], "alpha_offset": [0]}})")),
                  ConfigError);
  CHECK_THROWS_AS(parse_suite_config(Json::parse(
                      R"({"eq3": {"outdegrees": [[3, 2]], "gamma": [1], "alpha": [1]}})")),
                  ConfigError);
  CHECK_THROWS_AS(parse_suite_config(Json::parse(R"({"eq2": {"alpha": {"from": 0, "to": 2, "step": 0},
                                                  "beta": [1], "gamma": [1]}})")),
                  ConfigError);

  const auto c = parse_suite_config(Json::parse(R"({"eq2": {"alpha": {"from": "-1/2", "to": 1, "step": "1/2"},
                                                   "beta": [2], "gamma": ["1/3"], "n_max": 3}})"));
  REQUIRE(c.eq2.has_value());
  CHECK(c.eq2->alpha.values.size() == 4);
  CHECK(c.eq2->n_max == 3);
  CHECK_FALSE(c.eq1.has_value());
}

TEST_CASE("the shipped default config matches the built-in one") {
  std::ifstream in(std::string(CATALANIA_SOURCE_DIR) + "/config/default.json");
  REQUIRE(in.good());
  CHECK(Json::parse(in) == default_suite_config_json());
}

TEST_CASE("fault injection through the config hook") {
  const auto reports = run_suite(parse_suite_config(Json::parse(
      R"({"eq2": {"alpha": [1, 3], "beta": [2], "gamma": [1], "n_max": 5}, "test_hooks": {"corrupt_catalan": true}})")));
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].id == IdentityId::Eq2);
  REQUIRE_FALSE(reports[0].passed());
  const Json j = to_json(reports[0]);
  CHECK(j["status"] == "fail");
  CHECK(j["counterexample"]["params"]["n"] == "3");
  CHECK(j["counterexample"].contains("lhs"));
  CHECK(j["counterexample"].contains("rhs"));
}

TEST_CASE("default suite passes in a fixed order and is deterministic") {
  const auto reports = run_suite(default_suite_config());
  const std::vector<IdentityId> order{IdentityId::Eq1, IdentityId::Eq2, IdentityId::Eq3, IdentityId::Eq4,
                                      IdentityId::Eq5, IdentityId::Eq6, IdentityId::Eq7, IdentityId::Eq8,
                                      IdentityId::Eq9Roundtrip, IdentityId::Eq10, IdentityId::ClosedForm};
  REQUIRE(reports.size() == order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    CAPTURE(to_string(order[i]));
    CHECK(reports[i].id == order[i]);
    CHECK(reports[i].passed());
    CHECK(reports[i].checked > 0);
  }
  CHECK(to_json(reports).dump() == to_json(run_suite(default_suite_config())).dump());
  const Json j = to_json(reports[0]);
  for (const char* field : {"identity", "grid", "status", "checked", "skipped"}) CHECK(j.contains(field));
  CHECK_FALSE(j.contains("counterexample"));
}
