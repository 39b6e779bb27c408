#include <catch_amalgamated.hpp>

#include <map>
#include <string>

#include "infere/dsl.hpp"
#include "infere/random.hpp"

using namespace infere;
using namespace infere::ast;

namespace {

ErrorKind plain_error(const std::string& text) {
  try {
    (void)parse_plain(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("parse_plain accepted " << text);
  return ErrorKind::Io;
}

ErrorKind functional_error(const std::string& text) {
  try {
    (void)parse_functional(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("parse_functional accepted " << text);
  return ErrorKind::Io;
}

const RegexAst kTableV1Gold =
    disj(concat(star(CharClass::Any), CharClass::Num), concat(placeholder(0), star(CharClass::Any)));

}  // namespace

TEST_CASE("operator table has the twelve operators with their arities", "[dsl]") {
  REQUIRE(kOperators.size() == 12);
  for (const auto& entry : kOperators) {
    const bool binary = entry.op == Op::Concat || entry.op == Op::And || entry.op == Op::Or;
    CHECK(entry.arity == (binary ? 2U : 1U));
    CHECK(op_from_name(entry.name) == entry.op);
  }
  CHECK(info(Op::Rep).numeric_params == 1);
  CHECK(info(Op::RepeatLeast).numeric_params == 1);
  CHECK(info(Op::RepRange).numeric_params == 2);
  CHECK_FALSE(op_from_name("plus").has_value());
  CHECK_FALSE(op_from_name("repeat_atleast").has_value());
}

TEST_CASE("parse_plain on dataset-style strings", "[dsl][parse_plain]") {
  CHECK(parse_plain("((.*)([0-9]))|((<m0>)(.*))") == kTableV1Gold);
  CHECK(parse_plain("[a-z]") == RegexAst(CharClass::Low));
  CHECK(parse_plain("[A-Za-z]") == RegexAst(CharClass::Let));
  CHECK(parse_plain("[a-zA-Z]") == RegexAst(CharClass::Let));
  CHECK(parse_plain("[A-Z]") == RegexAst(CharClass::Cap));
  CHECK(parse_plain("[<A-Z>]") == RegexAst(CharClass::Cap));
  CHECK(parse_plain("[0-9]") == RegexAst(CharClass::Num));
  CHECK(parse_plain(".") == RegexAst(CharClass::Any));
  CHECK(parse_plain("[-,;+:!@#_$%&*=^]") == RegexAst(CharClass::Spec));
  CHECK(parse_plain("[AEIOUaeiou]") == RegexAst(CharClass::Vow));
  CHECK(parse_plain("<m12>") == placeholder(12));
  CHECK(parse_plain("<low>") == RegexAst(CharClass::Low));
}

TEST_CASE("parse_plain precedence", "[dsl][parse_plain]") {
  const RegexAst low = CharClass::Low;
  const RegexAst num = CharClass::Num;
  CHECK(parse_plain("[a-z][0-9]|<m0>") == disj(concat(low, num), placeholder(0)));
  CHECK(parse_plain("[a-z]&[0-9]|<m0>") == disj(conj(low, num), placeholder(0)));
  CHECK(parse_plain("[a-z]|[0-9]&<m0>") == disj(low, conj(num, placeholder(0))));
  CHECK(parse_plain("[a-z][0-9]*") == concat(low, star(num)));
  CHECK(parse_plain("~[a-z]*") == star(negate(low)));
  CHECK(parse_plain("~([a-z]*)") == negate(star(low)));
  CHECK(parse_plain("[a-z]?") == optional(low));
  CHECK(parse_plain("[a-z]{3}") == rep(low, 3));
  CHECK(parse_plain("[a-z]{3,}") == repeat_least(low, 3));
  CHECK(parse_plain("[a-z]{2,5}") == rep_range(low, 2, 5));
  CHECK(parse_plain("[a-z][0-9]<m0>") == concat(concat(low, num), placeholder(0)));
  CHECK(parse_plain(" ( [a-z] ) ( <m0> ) ") == concat(low, placeholder(0)));
  // Sugar surface forms stay as concatenations.
  CHECK(parse_plain("([a-z])(.*)") == concat(low, star(CharClass::Any)));
}

TEST_CASE("parse_plain errors", "[dsl][parse_plain]") {
  CHECK(plain_error("") == ErrorKind::EmptyInput);
  CHECK(plain_error("   ") == ErrorKind::EmptyInput);
  CHECK(plain_error("(([a-z])") == ErrorKind::UnbalancedParens);
  CHECK(plain_error("[a-z])") == ErrorKind::UnbalancedParens);
  CHECK(plain_error("(") == ErrorKind::UnbalancedParens);
  CHECK(plain_error("((a)(") == ErrorKind::UnknownToken);
  CHECK(plain_error("abc") == ErrorKind::UnknownToken);
  CHECK(plain_error("[a-z]|") == ErrorKind::UnknownToken);
  CHECK(plain_error("()") == ErrorKind::UnknownToken);
  CHECK(plain_error("[a-z]+") == ErrorKind::UnknownToken);
  CHECK(plain_error("[b-d]") == ErrorKind::UnknownCharClass);
  CHECK(plain_error("[A-Za-z0-9]") == ErrorKind::UnknownCharClass);
  CHECK(plain_error("<foo>") == ErrorKind::UnknownCharClass);
  CHECK(plain_error("<m>") == ErrorKind::UnknownCharClass);
  CHECK(plain_error("[a-z]{3,2}") == ErrorKind::BadRepetitionBounds);
  CHECK(plain_error("[a-z]{x}") == ErrorKind::MalformedInteger);
  CHECK(plain_error("[a-z]{99999999999}") == ErrorKind::MalformedInteger);
}

TEST_CASE("parse_functional", "[dsl][parse_functional]") {
  CHECK(parse_functional("and(startwith(<low>),endwith(<vow>))") ==
        conj(startwith(CharClass::Low), endwith(CharClass::Vow)));
  CHECK(parse_functional("concat(or(<low>,<cap>),<m0>)") ==
        concat(disj(CharClass::Low, CharClass::Cap), placeholder(0)));
  CHECK(parse_functional("<num>") == RegexAst(CharClass::Num));
  CHECK(parse_functional("rep_range( <let> , 1 , 4 )") == rep_range(CharClass::Let, 1, 4));
  CHECK(parse_functional("repeat_least(<let>,3)") == repeat_least(CharClass::Let, 3));
  CHECK(parse_functional("contain([0-9])") == contain(CharClass::Num));
}

TEST_CASE("parse_functional errors", "[dsl][parse_functional]") {
  CHECK(functional_error("plus(<low>)") == ErrorKind::UnknownOperator);
  CHECK(functional_error("Star(<low>)") == ErrorKind::UnknownOperator);
  CHECK(functional_error("star(<low>,<cap>)") == ErrorKind::ArityMismatch);
  CHECK(functional_error("concat(<low>)") == ErrorKind::ArityMismatch);
  CHECK(functional_error("rep(<low>)") == ErrorKind::ArityMismatch);
  CHECK(functional_error("rep(3,<low>)") == ErrorKind::ArityMismatch);
  CHECK(functional_error("star") == ErrorKind::ArityMismatch);
  CHECK(functional_error("rep(<low>,3x)") == ErrorKind::MalformedInteger);
  CHECK(functional_error("rep(<low>,-1)") == ErrorKind::MalformedInteger);
  CHECK(functional_error("rep_range(<low>,3,2)") == ErrorKind::BadRepetitionBounds);
  CHECK(functional_error("star(<low>") == ErrorKind::UnbalancedParens);
  CHECK(functional_error("star(<low>))") == ErrorKind::UnbalancedParens);
  CHECK(functional_error("<bogus>") == ErrorKind::UnknownCharClass);
}

TEST_CASE("render_plain uses the fully parenthesized templates", "[dsl][render_plain]") {
  CHECK(render_plain(kTableV1Gold) == "((.*)([0-9]))|((<m0>)(.*))");
  CHECK(render_plain(CharClass::Cap) == "[A-Z]");
  CHECK(render_plain(star(CharClass::Any)) == ".*");
  CHECK(render_plain(star(CharClass::Low)) == "([a-z])*");
  CHECK(render_plain(conj(startwith(CharClass::Low), endwith(CharClass::Vow))) ==
        "(([a-z])(.*))&((.*)([AEIOUaeiou]))");
  CHECK(render_plain(contain(CharClass::Num)) == "(.*)(([0-9])(.*))");
  CHECK(render_plain(negate(CharClass::Num)) == "~([0-9])");
  CHECK(render_plain(optional(CharClass::Num)) == "([0-9])?");
  CHECK(render_plain(rep(CharClass::Let, 3)) == "([A-Za-z]){3}");
  CHECK(render_plain(repeat_least(CharClass::Let, 3)) == "([A-Za-z]){3,}");
  CHECK(render_plain(rep_range(CharClass::Let, 1, 2)) == "([A-Za-z]){1,2}");
  CHECK(render_plain(concat(placeholder(0), star(concat(star(CharClass::Any), CharClass::Cap)))) ==
        "(<m0>)(((.*)([A-Z]))*)");
}

TEST_CASE("render_functional", "[dsl][render_functional]") {
  CHECK(render_functional(conj(startwith(placeholder(0)), endwith(CharClass::Num))) ==
        "and(startwith(<m0>),endwith(<num>))");
  CHECK(render_functional(placeholder(0)) == "<m0>");
  CHECK(render_functional(rep_range(CharClass::Spec, 0, 2)) == "rep_range(<spec>,0,2)");
}

TEST_CASE("random trees survive both text round trips", "[dsl][property]") {
  Rng rng(20240601);
  AstGenConfig config;
  config.max_depth = 6;
  std::map<std::string, RegexAst> seen_plain;
  for (int i = 0; i < 1000; ++i) {
    const RegexAst t = random_ast(rng, config);
    INFO(render_functional(t));
    REQUIRE(parse_functional(render_functional(t)) == t);
    const RegexAst flat = desugar(t);
    const std::string text = render_plain(t);
    REQUIRE(parse_plain(text) == flat);
    REQUIRE(render_plain(flat) == text);
    // Injective on desugared trees: one string, one tree.
    auto [it, fresh] = seen_plain.emplace(text, flat);
    if (!fresh) REQUIRE(it->second == flat);
  }
}

TEST_CASE("desugar expands the three sugar operators", "[dsl]") {
  const RegexAst r = CharClass::Num;
  const RegexAst any_star = star(CharClass::Any);
  CHECK(desugar(startwith(r)) == concat(r, any_star));
  CHECK(desugar(endwith(r)) == concat(any_star, r));
  CHECK(desugar(contain(r)) == concat(any_star, concat(r, any_star)));
  CHECK(desugar(conj(startwith(r), r)) == conj(concat(r, any_star), r));
}
