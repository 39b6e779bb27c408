#include <catch_amalgamated.hpp>

#include <optional>
#include <string>
#include <vector>

#include "infere/random.hpp"
#include "infere/self_consistency.hpp"

using namespace infere;
using namespace infere::ast;

namespace {

std::vector<Candidate> numbered(std::vector<std::pair<Source, std::string>> items) {
  std::vector<Candidate> out;
  for (auto& [source, text] : items) out.push_back({source, std::move(text), out.size()});
  return out;
}

// Three candidates from the first worked example: A and B agree, C differs.
const std::string kA = "((<m0>)(.*))|((.*)([0-9]))";
const std::string kB = "((.*)([0-9]))|((<m0>)(.*))";
const std::string kC = "((<m0>)|((.*)([0-9])))(.*)";

}  // namespace

TEST_CASE("normalize_candidate per source", "[self_consistency]") {
  CHECK(normalize_candidate({Source::Chain, "step1=<low> step2=startwith(step1)", 0}) ==
        startwith(CharClass::Low));
  CHECK(normalize_candidate({Source::Tree, "and(startwith(<m0>),endwith(<num>))", 0}) ==
        conj(startwith(placeholder(0)), endwith(CharClass::Num)));
  CHECK(normalize_candidate({Source::Plain, "[a-z]", 0}) == RegexAst(CharClass::Low));
  CHECK_THROWS_AS(normalize_candidate({Source::Plain, "((a)(", 0}), Error);
  CHECK_THROWS_AS(normalize_candidate({Source::Chain, "step1=<low> step2=<num>", 0}), Error);
  CHECK(source_from_string("chain") == Source::Chain);
  CHECK(source_from_string("tree") == Source::Tree);
  CHECK(source_from_string("plain") == Source::Plain);
  CHECK_FALSE(source_from_string("nl").has_value());
}

TEST_CASE("vote examples", "[self_consistency][vote]") {
  SECTION("two equivalent plain regexes beat a third") {
    const auto cands = numbered({{Source::Plain, kA}, {Source::Plain, kB}, {Source::Plain, kC}});
    const VoteOutcome out = vote(cands);
    CHECK(out.winner == parse_plain(kA));
    CHECK(out.winner_votes == 2);
    REQUIRE(out.classes.size() == 2);
    CHECK(out.classes[0].member_orders == std::vector<std::size_t>{0, 1});
    CHECK(out.classes[1].votes == 1);
    CHECK(out.invalid_count == 0);
  }
  SECTION("single candidate") {
    const auto cands = numbered({{Source::Tree, "star(<low>)"}});
    const VoteOutcome out = vote(cands);
    CHECK(out.winner == star(CharClass::Low));
    CHECK(out.winner_votes == 1);
  }
  SECTION("tie goes to the earliest class") {
    const auto cands = numbered({{Source::Plain, kC}, {Source::Plain, kA}});
    const VoteOutcome out = vote(cands);
    CHECK(out.winner == parse_plain(kC));
    CHECK(out.winner_votes == 1);
    CHECK(out.classes[1].representative_order == 1);
  }
  SECTION("class sizes 3/2/1") {
    const auto cands = numbered({
        {Source::Tree, "star(<low>)"},
        {Source::Tree, "concat(<num>,<num>)"},
        {Source::Chain, "step1=<num> step2=rep(step1,2)"},
        {Source::Plain, "([a-z])*"},
        {Source::Tree, "star(star(<low>))"},
        {Source::Plain, "[A-Z]"},
    });
    const VoteOutcome out = vote(cands);
    REQUIRE(out.classes.size() == 3);
    CHECK(out.winner == star(CharClass::Low));
    CHECK(out.classes[0].votes == 3);
    CHECK(out.classes[0].member_orders == std::vector<std::size_t>{0, 3, 4});
    CHECK(out.classes[1].votes == 2);
    CHECK(out.classes[1].representative == concat(CharClass::Num, CharClass::Num));
    CHECK(out.classes[2].votes == 1);
  }
  SECTION("invalid candidates are excluded and counted") {
    const auto cands = numbered({{Source::Plain, "((a)("}, {Source::Tree, "rep(<low>,500)"}, {Source::Plain, kC}});
    const VoteOutcome out = vote(cands);
    CHECK(out.winner == parse_plain(kC));
    CHECK(out.invalid_count == 2);
    CHECK(out.invalid_orders == std::vector<std::size_t>{0, 1});
  }
  SECTION("nothing valid") {
    const auto cands = numbered({{Source::Plain, "((a)("}, {Source::Chain, "step1=and(step2,step3)"}});
    try {
      (void)vote(cands);
      FAIL("vote succeeded");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NoValidCandidates);
    }
    CHECK_THROWS_AS(vote(std::vector<Candidate>{}), Error);
  }
}

TEST_CASE("self_consistency_decode", "[self_consistency][decode]") {
  SECTION("one sample per source in different forms") {
    const std::vector<std::string> chains{"step1=<m0> step2=startwith(step1) step3=<num> step4=endwith(step3) step5=or(step2,step4)"};
    const std::vector<std::string> trees{"or(endwith(<num>),startwith(<m0>))"};
    const VoteOutcome out = self_consistency_decode(chains, trees);
    CHECK(out.winner_votes == 2);
    CHECK(out.winner == disj(startwith(placeholder(0)), endwith(CharClass::Num)));
  }
  SECTION("all chains invalid") {
    const std::vector<std::string> chains{"step1=", "garbage", "step1=<low> step1=<low>"};
    const std::vector<std::string> trees{"star(<num>)", "<low>", "star(<num>)"};
    const VoteOutcome out = self_consistency_decode(chains, trees);
    CHECK(out.invalid_count == 3);
    CHECK(out.winner == star(CharClass::Num));
    CHECK(out.winner_votes == 2);
    CHECK(out.classes[0].representative_order == 3);
  }
  SECTION("k cap per source") {
    std::vector<std::string> chains(5, "step1=<low>");
    std::vector<std::string> trees(3, "<num>");
    VoteOptions options;
    options.k_cap = 2;
    const VoteOutcome out = self_consistency_decode(chains, trees, options);
    CHECK(out.winner_votes == 2);
    CHECK(out.classes[1].member_orders == std::vector<std::size_t>{2, 3});
  }
}

TEST_CASE("vote properties on random candidate pools", "[self_consistency][property]") {
  Rng rng(23);
  AstGenConfig config;
  config.max_depth = 3;
  for (int round = 0; round < 100; ++round) {
    // A handful of base trees, each sampled several times in varied forms.
    std::vector<RegexAst> bases;
    for (std::size_t b = 0, n = 1 + rng.below(4); b < n; ++b) bases.push_back(random_ast(rng, config));
    std::vector<Candidate> cands;
    for (std::size_t i = 0, n = 1 + rng.below(10); i < n; ++i) {
      const RegexAst t = equivalent_rewrite(rng.pick(bases), rng);
      switch (rng.below(4)) {
        case 0: cands.push_back({Source::Chain, render_chain(decompose(t)), i}); break;
        case 1: cands.push_back({Source::Tree, render_functional(t), i}); break;
        case 2: cands.push_back({Source::Plain, render_plain(t), i}); break;
        default: cands.push_back({Source::Plain, render_plain(t) + ")", i}); break;
      }
    }
    std::optional<VoteOutcome> result;
    try {
      result = vote(cands);
    } catch (const Error& e) {
      REQUIRE(e.kind() == ErrorKind::NoValidCandidates);
      continue;
    }
    const VoteOutcome& out = *result;
    std::size_t total = out.invalid_count;
    for (const auto& cls : out.classes) total += cls.votes;
    REQUIRE(total == cands.size());
    REQUIRE(out.winner_votes == out.classes.front().votes);
    for (const auto& cls : out.classes) REQUIRE(cls.votes <= out.winner_votes);

    // Shared-alphabet grouping matches pairwise equivalence.
    for (const auto& cls : out.classes) {
      for (std::size_t order : cls.member_orders) {
        REQUIRE(equivalent(normalize_candidate(cands[order]), cls.representative));
      }
      REQUIRE(cls.representative_order == cls.member_orders.front());
    }
    for (std::size_t a = 0; a < out.classes.size(); ++a) {
      for (std::size_t b = a + 1; b < out.classes.size(); ++b) {
        REQUIRE_FALSE(equivalent(out.classes[a].representative, out.classes[b].representative));
      }
    }

    // Deterministic.
    const VoteOutcome again = vote(cands);
    REQUIRE(again.winner == out.winner);
    REQUIRE(again.invalid_orders == out.invalid_orders);

    // Adding invalid candidates after the valid ones changes nothing but the tally.
    std::vector<Candidate> padded = cands;
    padded.push_back({Source::Plain, "((", cands.size()});
    padded.push_back({Source::Chain, "step9=<low>", cands.size() + 1});
    const VoteOutcome more = vote(padded);
    REQUIRE(more.winner == out.winner);
    REQUIRE(more.winner_votes == out.winner_votes);
    REQUIRE(more.invalid_count == out.invalid_count + 2);

    // Reordering members within the winning class keeps the winning class.
    const auto& win = out.classes.front().member_orders;
    if (win.size() >= 2) {
      std::vector<Candidate> swapped = cands;
      std::swap(swapped[win.front()].text, swapped[win.back()].text);
      std::swap(swapped[win.front()].source, swapped[win.back()].source);
      const VoteOutcome after = vote(swapped);
      REQUIRE(equivalent(after.winner, out.winner));
      REQUIRE(after.winner_votes == out.winner_votes);
    }
  }
}
