#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gen.hpp"
#include "pcfh/parser.hpp"

using namespace pcfh;

TEST_CASE("parses the core forms") {
  TermPtr t = parseTerm("(\\x. x 0) (\\z. z)");
  REQUIRE(t->kind == TermKind::App);
  CHECK(t->fun()->kind == TermKind::Abs);
  CHECK(alphaEq(t->fun(), mkAbs("x", mkApp(mkVar("x"), mkZero()))));
  CHECK(alphaEq(t->arg(), mkAbs("z", mkVar("z"))));

  TermPtr u = parseTerm("ifz(S 0; \\z.z; x. \\y. x)");
  REQUIRE(u->kind == TermKind::IfZ);
  CHECK(alphaEq(u, mkIfZ(mkSucc(mkZero()), mkAbs("z", mkVar("z")), "x",
                         mkAbs("y", mkVar("x")))));
}

TEST_CASE("decimal literals desugar to numerals") {
  CHECK(alphaEq(parseTerm("2"), mkSucc(mkSucc(mkZero()))));
  CHECK(alphaEq(parseTerm("0"), mkZero()));
  CHECK(alphaEq(parseTerm("S 2"), mkNat(3)));
}

TEST_CASE("application is left-associative, bodies extend right") {
  CHECK(alphaEq(parseTerm("f a b"),
                mkApp(mkApp(mkVar("f"), mkVar("a")), mkVar("b"))));
  CHECK(alphaEq(parseTerm("\\x. x x"), mkAbs("x", mkApp(mkVar("x"), mkVar("x")))));
  CHECK(alphaEq(parseTerm("fix f. f 0"), mkFix("f", mkApp(mkVar("f"), mkZero()))));
}

TEST_CASE("comments and whitespace are skipped") {
  CHECK(alphaEq(parseTerm("# a comment\n  S 0 # trailing\n"), mkNat(1)));
}

TEST_CASE("printTerm matches the expected concrete forms") {
  CHECK(printTerm(mkAbs("x", mkVar("x"))) == "\\x. x");
  CHECK(printTerm(mkSucc(mkSucc(mkZero()))) == "S (S 0)");
  CHECK(printTerm(mkFix("f", mkAbs("n", mkApp(mkVar("f"), mkVar("n"))))) ==
        "fix f. \\n. f n");
}

TEST_CASE("located errors") {
  auto spanOf = [](const std::string& src) {
    try {
      parseTerm(src);
    } catch (const ParseError& e) {
      return e.span;
    }
    FAIL("expected a parse error for: " << src);
    return SourceSpan{};
  };
  SourceSpan s = spanOf("(\\x. x");  // unbalanced
  CHECK(s.start == 6);
  s = spanOf("\\S. S");  // reserved word as binder
  CHECK(s.start == 1);
  CHECK(s.end == 2);
  CHECK_THROWS_AS(parseTerm("fix 0. x"), ParseError);
  CHECK_THROWS_AS(parseTerm("ifz(0; 0)"), ParseError);
  CHECK_THROWS_AS(parseTerm("x ?"), ParseError);
  CHECK_THROWS_AS(parseTerm(""), ParseError);
}

TEST_CASE("round-trip law on generated terms") {
  gen::TermGen g(21);
  for (int i = 0; i < 1000; ++i) {
    TermPtr t = g.closedTerm(12);
    TermPtr back = parseTerm(printTerm(t));
    CHECK(alphaEq(back, t));
  }
}

TEST_CASE("printing is stable under reparse") {
  gen::TermGen g(22);
  for (int i = 0; i < 300; ++i) {
    TermPtr t = g.closedTerm(12);
    std::string s = printTerm(t);
    CHECK(printTerm(parseTerm(s)) == s);
  }
}
