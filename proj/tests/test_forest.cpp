#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "catalania/forest.hpp"
#include "oracles.hpp"

using namespace catalania;

namespace {

std::vector<std::size_t> code_of(const Forest& f) {
  std::vector<std::size_t> code;
  std::function<void(const Tree&)> walk = [&](const Tree& t) {
    code.push_back(t.children.size());
    for (const Tree& c : t.children) walk(c);
  };
  for (const Tree& t : f.trees) walk(t);
  return code;
}

bool all_outdegrees_in(const Tree& t, const std::set<std::size_t>& allowed) {
  if (t.is_leaf()) return true;
  if (!allowed.count(t.children.size())) return false;
  for (const Tree& c : t.children) {
    if (!all_outdegrees_in(c, allowed)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("generator examples") {
  const auto single = generate_kary(2, 0);
  REQUIRE(single.size() == 1);
  CHECK(single[0].is_leaf());
  CHECK(generate_kary(2, 3).size() == 5);
  CHECK(generate_kary(3, 2).size() == 3);
  CHECK(generate_forests(2, 1, 2).size() == 2);
  CHECK(generate_forests(4, 0, 3).size() == 1);
  CHECK(generate_forests(2, 2, 2).size() == 5);
  CHECK(generate_mixed_forests(VecProfile({1, 1}, {2, 3}), 1).size() == 5);
  CHECK(generate_mixed_forests(VecProfile({0, 0}, {2, 3}), 3).size() == 1);
  CHECK(generate_mixed_forests(VecProfile({2}, {2}), 1).size() == 2);
  CHECK_THROWS_AS(generate_kary(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_forests(0, 1, 1), std::invalid_argument);
}

TEST_CASE("zero components give the empty forest only when nothing is internal") {
  const auto none = generate_forests(2, 0, 0);
  REQUIRE(none.size() == 1);
  CHECK(none[0].components() == 0);
  CHECK(encode(none[0]).empty());
  CHECK(generate_forests(2, 3, 0).empty());
}

TEST_CASE("generation order is lexicographic in the budget split") {
  std::vector<std::string> codes;
  for (const Forest& f : generate_forests(2, 2, 1)) codes.push_back(encode(f));
  CHECK(codes == std::vector<std::string>{"(o(oo))", "((oo)o)"});
  codes.clear();
  for (const Forest& f : generate_forests(2, 1, 2)) codes.push_back(encode(f));
  CHECK(codes == std::vector<std::string>{"o;(oo)", "(oo);o"});
}

TEST_CASE("generators agree with brute force over preorder words") {
  for (std::size_t beta = 1; beta <= 3; ++beta) {
    for (std::size_t gamma = 0; gamma <= 3; ++gamma) {
      for (std::size_t n = 0; n <= (beta == 3 ? 3U : 4U); ++n) {
        CAPTURE(beta);
        CAPTURE(gamma);
        CAPTURE(n);
        std::set<std::vector<std::size_t>> got;
        std::size_t total = 0;
        for (const Forest& f : generate_forests(beta, n, gamma)) {
          got.insert(code_of(f));
          ++total;
        }
        CHECK(total == got.size());
        CHECK(got == oracle::brute_force_codes({beta}, {n}, gamma));
      }
    }
  }
  for (const auto& counts : std::vector<std::vector<std::size_t>>{{1, 1}, {2, 1}, {0, 2}, {2, 0}}) {
    for (std::size_t gamma = 0; gamma <= 2; ++gamma) {
      const VecProfile p(counts, {2, 3});
      std::set<std::vector<std::size_t>> got;
      for (const Forest& f : generate_mixed_forests(p, gamma)) got.insert(code_of(f));
      CHECK(got == oracle::brute_force_codes({2, 3}, counts, gamma));
    }
  }
}

TEST_CASE("streaming visitors match the materializing generators") {
  std::vector<std::string> streamed;
  visit_kary_forests(3, 3, 2, [&](std::span<const std::size_t> code) {
    streamed.push_back(encode(forest_from_code(code)));
  });
  std::vector<std::string> listed;
  for (const Forest& f : generate_forests(3, 3, 2)) listed.push_back(encode(f));
  CHECK(streamed == listed);
}

TEST_CASE("leaf law, structure and roundtrip on the generator grid") {
  for (std::size_t beta = 1; beta <= 3; ++beta) {
    for (std::size_t gamma = 1; gamma <= 3; ++gamma) {
      for (std::size_t n = 0; n <= (beta == 3 ? 4U : 6U); ++n) {
        std::set<std::string> seen;
        for (const Forest& f : generate_forests(beta, n, gamma)) {
          const std::string text = encode(f);
          CHECK(seen.insert(text).second);
          CHECK(f.components() == gamma);
          CHECK(count_internal(f) == n);
          CHECK(count_leaves(f) == (beta - 1) * n + gamma);
          CHECK(decode(text) == f);
          for (const Tree& t : f.trees) CHECK(all_outdegrees_in(t, {beta}));
        }
        CHECK(seen.size() == oracle::forest_count(beta, n, gamma).get_ui());
      }
    }
  }
}

TEST_CASE("leaf law for mixed forests") {
  for (const Forest& f : generate_forests(3, 4, 2)) CHECK(count_leaves(f) == 10);
  for (const Forest& f : generate_mixed_forests(VecProfile({1, 1}, {2, 3}), 1)) CHECK(count_leaves(f) == 4);
}

TEST_CASE("encode and decode") {
  CHECK(encode(Tree{}) == "o");
  CHECK(encode(Tree{{Tree{}, Tree{}}}) == "(oo)");
  const Forest f = decode("(o(oo));o");
  CHECK(f.components() == 2);
  CHECK(count_internal(f) == 2);
  CHECK(count_leaves(f) == 4);
  CHECK(decode("").components() == 0);
  CHECK(encode(f) == "(o(oo));o");
}

TEST_CASE("decode reports the first offending position") {
  struct Bad {
    const char* text;
    std::size_t position;
  };
  for (const Bad& bad : {Bad{"x", 0}, Bad{"(oo", 3}, Bad{"()", 1}, Bad{"o;", 2}, Bad{"oo", 1}, Bad{"(o)x", 3},
                         Bad{";o", 0}}) {
    CAPTURE(bad.text);
    try {
      decode(bad.text);
      FAIL("decode accepted malformed input");
    } catch (const DecodeError& e) {
      CHECK(e.position() == bad.position);
    }
  }
}

TEST_CASE("levels are forest-global") {
  const Forest f = decode("(oo);((oo)o)");
  const auto lv = levels(f);
  REQUIRE(lv.size() == 3);
  CHECK(lv[0].size() == 2);
  CHECK(lv[1] == std::vector<VertexAddr>{{0, {0}}, {0, {1}}, {1, {0}}, {1, {1}}});
  CHECK(lv[2] == std::vector<VertexAddr>{{1, {0, 0}}, {1, {0, 1}}});
  CHECK(vertex_at(f, VertexAddr{1, {0}}).children.size() == 2);
  CHECK_THROWS_AS(vertex_at(f, VertexAddr{2, {}}), std::out_of_range);
  CHECK_THROWS_AS(vertex_at(f, VertexAddr{0, {0, 0}}), std::out_of_range);
  CHECK(leaves_preorder(f).size() == 5);
}

TEST_CASE("forest_from_code rejects truncated codes") {
  const std::vector<std::size_t> truncated{2, 0};
  CHECK_THROWS_AS(forest_from_code(truncated), std::invalid_argument);
}
