#include <catch_amalgamated.hpp>

#include <sstream>

#include "infere/fixtures.hpp"

using namespace infere;

TEST_CASE("fixtures are deterministic in the seed", "[fixtures]") {
  const Fixture a = generate_fixture(13, 80, 4);
  const Fixture b = generate_fixture(13, 80, 4);
  const Fixture c = generate_fixture(14, 80, 4);
  CHECK(a.golds == b.golds);
  CHECK(a.queries == b.queries);
  CHECK(a.candidate_sets == b.candidate_sets);
  CHECK(a.golds != c.golds);
}

TEST_CASE("fixture shape", "[fixtures]") {
  for (std::size_t depth = 1; depth <= kMaxFixtureDepth; ++depth) {
    const Fixture fx = generate_fixture(depth, 60, depth);
    REQUIRE(fx.golds.size() == 60);
    REQUIRE(fx.queries.size() == 60);
    CHECK(fx.candidate_sets.size() == 60 - 60 / 25);
    for (std::size_t i = 0; i < fx.golds.size(); ++i) {
      // The query line ends with the generated tree in functional form.
      const std::string& query = fx.queries[i];
      const RegexAst tree = parse_functional(query.substr(query.find(": ") + 2));
      CHECK(infere::depth(tree) <= depth);
      CHECK(render_plain(tree) == fx.golds[i]);
      CHECK(parse_plain(fx.golds[i]) == desugar(tree));
    }
    for (const auto& set : fx.candidate_sets) {
      REQUIRE_FALSE(set.candidates.empty());
      for (std::size_t i = 0; i < set.candidates.size(); ++i) CHECK(set.candidates[i].order == i);
      CHECK(set.id % 25 != 24);
    }
  }
  CHECK_THROWS(generate_fixture(0, 5, 0));
  CHECK_THROWS(generate_fixture(0, 5, kMaxFixtureDepth + 1));
}
