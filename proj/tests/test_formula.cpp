#include <doctest.h>

#include "corpus.hpp"
#include "epitab/formula.hpp"

using namespace epitab;

TEST_CASE("atoms and agents are validated identifiers") {
  CHECK(isIdentifier("p"));
  CHECK(isIdentifier("p1"));
  CHECK(isIdentifier("p_x"));
  CHECK_FALSE(isIdentifier(""));
  CHECK_FALSE(isIdentifier("1p"));
  CHECK_FALSE(isIdentifier("a-b"));
  // a leading lowercase letter is required, keeping names distinguishable
  // from the K/D/C operator letters
  CHECK_FALSE(isIdentifier("_x"));
  CHECK_FALSE(isIdentifier("P"));
  CHECK_THROWS_AS(atom("1p"), std::invalid_argument);
  CHECK_THROWS_AS(knows("", atom("p")), std::invalid_argument);
}

TEST_CASE("AgentSet sorts, deduplicates and validates") {
  AgentSet s = AgentSet::fromCsv("b,a");
  CHECK(s.csv() == "a,b");
  CHECK(s.size() == 2);
  CHECK(s.contains("a"));
  CHECK_FALSE(s.contains("c"));
  CHECK(AgentSet::fromCsv("a, b").csv() == "a,b");
  CHECK(AgentSet({"b", "a", "b"}).csv() == "a,b");
  CHECK_THROWS_AS(AgentSet::fromCsv("a,,b"), std::invalid_argument);
  CHECK_THROWS_AS(AgentSet::fromCsv("a,1b"), std::invalid_argument);
  CHECK(AgentSet{}.empty());
}

TEST_CASE("construction interns structurally equal formulas") {
  Formula f = mkAnd(knows("a", atom("p")), mkNot(atom("q")));
  Formula g = mkAnd(knows("a", atom("p")), mkNot(atom("q")));
  CHECK(f == g);  // pointer identity
  CHECK(parse("K{a} p & ~q") == f);
}

TEST_CASE("rendering uses minimal parentheses and is re-parseable") {
  CHECK(render(parse("p & q & r")) == "p & q & r");
  CHECK(render(parse("p & (q & r)")) == "p & (q & r)");
  CHECK(render(parse("~(p & q)")) == "~(p & q)");
  CHECK(render(parse("~p & q")) == "~p & q");
  CHECK(render(parse("K{a} (p & q)")) == "K{a} (p & q)");
  CHECK(render(parse("C D p")) == "C D p");
}

TEST_CASE("precedence and associativity") {
  CHECK(parse("p & q & r") == mkAnd(mkAnd(atom("p"), atom("q")), atom("r")));
  CHECK(parse("K{a} p & q") == mkAnd(knows("a", atom("p")), atom("q")));
  CHECK(parse("~K{a} ~p") == mkNot(knows("a", mkNot(atom("p")))));
  CHECK(parse("D C p") == dist(common(atom("p"))));
}

TEST_CASE("or, implication and equivalence desugar to ~ and &") {
  Formula p = atom("p"), q = atom("q"), r = atom("r");
  CHECK(parse("p | q") == mkNot(mkAnd(mkNot(p), mkNot(q))));
  CHECK(parse("p -> q") == mkNot(mkAnd(p, mkNot(q))));
  // -> is right-associative
  CHECK(parse("p -> q -> r") ==
        mkNot(mkAnd(p, mkNot(mkNot(mkAnd(q, mkNot(r)))))));
  // <-> is both implications conjoined
  CHECK(parse("p <-> q") ==
        mkAnd(mkNot(mkAnd(p, mkNot(q))), mkNot(mkAnd(q, mkNot(p)))));
  // | binds tighter than ->
  CHECK(parse("p | q -> r") == parse("(p | q) -> r"));
  // & binds tighter than |
  CHECK(parse("p & q | r") == parse("(p & q) | r"));
}

TEST_CASE("parse errors carry a position and quote the offending token") {
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("p &"), ParseError);
  CHECK_THROWS_AS(parse("(p"), ParseError);
  CHECK_THROWS_AS(parse("p q"), ParseError);
  CHECK_THROWS_AS(parse("K p"), ParseError);
  CHECK_THROWS_AS(parse("K{} p"), ParseError);
  try {
    parse("p & & q");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.position > 0);
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
}

TEST_CASE("parsing against an agent set rejects strangers") {
  AgentSet ab = AgentSet::fromCsv("a,b");
  CHECK(parse("K{a} p", ab) == knows("a", atom("p")));
  try {
    parse("K{c} p", ab);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("c") != std::string::npos);
  }
}

TEST_CASE("shape helpers classify nodes") {
  CHECK(isAtom(parse("p")));
  CHECK(isDiamondK(parse("~K{a} p")));
  CHECK(isDiamondD(parse("~D p")));
  CHECK(isDiamond(parse("~D p")));
  CHECK_FALSE(isDiamond(parse("~C p")));
  CHECK(isEventuality(parse("~C p")));
  CHECK_FALSE(isEventuality(parse("~~C p")));
  CHECK(isBox(parse("K{a} p")));
  CHECK(isBox(parse("D p")));
  CHECK_FALSE(isBox(parse("C p")));
}

TEST_CASE("agentsIn and atomsIn collect sorted unique names") {
  Formula f = parse("K{b} (p & K{a} q) & ~D r");
  CHECK(agentsIn(f) == std::vector<std::string>{"a", "b"});
  CHECK(atomsIn(f) == std::vector<std::string>{"p", "q", "r"});
  CHECK(agentsIn(parse("C p")).empty());
}

TEST_CASE("subformulae is the usual syntactic closure") {
  FormulaSet s = subformulae(parse("K{a} (p & q)"));
  CHECK(s.size() == 4);
  CHECK(s.contains(parse("K{a} (p & q)")));
  CHECK(s.contains(parse("p & q")));
  CHECK(s.contains(parse("p")));
  CHECK(s.contains(parse("q")));
  // the decision-procedure example input has 8 distinct subformulas
  CHECK(subformulae(parse("K{a} p & K{b} p & ~D C p")).size() == 8);
}

TEST_CASE("FormulaSet deduplicates and iterates in rendering order") {
  FormulaSet s;
  CHECK(s.insert(parse("q")));
  CHECK(s.insert(parse("p")));
  CHECK_FALSE(s.insert(parse("p")));
  CHECK(s.size() == 2);
  CHECK(s.renderSet() == "{p, q}");
  CHECK(s.contains(parse("p")));
  FormulaSet t{parse("p"), parse("q"), parse("r")};
  CHECK(s.subsetOf(t));
  CHECK_FALSE(t.subsetOf(s));
  CHECK(s != t);
  CHECK(t.insertAll(s) == false);  // nothing new
}

TEST_CASE("parse is a left inverse of render on both corpora") {
  for (Formula f : tests::exhaustiveCorpus(4)) CHECK(parse(render(f)) == f);
  for (Formula f : tests::randomCorpus(200, 20)) CHECK(parse(render(f)) == f);
}

TEST_CASE("corpus sizes are the expected counts") {
  CHECK(tests::exhaustiveCorpus(0).size() == 1);
  CHECK(tests::exhaustiveCorpus(1).size() == 7);
  CHECK(tests::exhaustiveCorpus(2).size() == 49);
  CHECK(tests::exhaustiveCorpus(3).size() == 379);
  CHECK(tests::exhaustiveCorpus(4).size() == 3193);
  CHECK(tests::randomCorpus(200, 20).size() == 200);
}
