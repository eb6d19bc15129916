#include <doctest.h>

#include "corpus.hpp"
#include "epitab/closure.hpp"

using namespace epitab;

namespace {
const AgentSet kAB = AgentSet::fromCsv("a,b");
}

TEST_CASE("closure of simple formulas") {
  CHECK(closure(parse("p"), kAB) == FormulaSet{parse("p")});
  CHECK(closure(parse("~p"), kAB) == FormulaSet{parse("~p"), parse("p")});
  CHECK(closure(parse("K{a} p"), kAB) ==
        FormulaSet{parse("K{a} p"), parse("p"), parse("D p")});
  CHECK(closure(parse("D p"), kAB) == FormulaSet{parse("D p"), parse("p")});
}

TEST_CASE("closure unfolds C through every agent") {
  FormulaSet c = closure(parse("C p"), kAB);
  CHECK(c.size() == 6);
  CHECK(c.contains(parse("C p")));
  CHECK(c.contains(parse("p")));
  CHECK(c.contains(parse("K{a} (p & C p)")));
  CHECK(c.contains(parse("K{b} (p & C p)")));
  CHECK(c.contains(parse("p & C p")));
  CHECK(c.contains(parse("D (p & C p)")));
}

TEST_CASE("closure of the worked-example input has 13 members, 25 extended") {
  Formula theta = parse("K{a} p & K{b} p & ~D C p");
  FormulaSet c = closure(theta, kAB);
  CHECK(c.size() == 13);
  for (const char* t :
       {"K{a} p & K{b} p & ~D C p", "K{a} p & K{b} p", "~D C p", "K{a} p", "K{b} p", "p",
        "D p", "D C p", "C p", "K{a} (p & C p)", "K{b} (p & C p)", "p & C p",
        "D (p & C p)"})
    CHECK(c.contains(parse(t)));
  CHECK(extendedClosure(theta, kAB).size() == 25);
}

TEST_CASE("closure is closed under subformulas and under itself") {
  for (Formula f : tests::exhaustiveCorpus(3)) {
    FormulaSet c = closure(f, kAB);
    CHECK(closureOfSet(c, kAB) == c);  // idempotent
    for (Formula g : c)
      for (Formula sub : subformulae(g)) CHECK(c.contains(sub));
  }
}

TEST_CASE("extended closure adds exactly the missing negations") {
  for (Formula f : tests::exhaustiveCorpus(3)) {
    FormulaSet c = closure(f, kAB);
    FormulaSet e = extendedClosure(f, kAB);
    std::size_t notShaped = 0;
    for (Formula g : c)
      if (isNot(g)) ++notShaped;
    CHECK(e.size() == 2 * c.size() - notShaped);
    for (Formula g : c) {
      CHECK(e.contains(g));
      CHECK(e.contains(mkNot(g)));
    }
  }
}

TEST_CASE("closureOfSet unions the member closures") {
  FormulaSet gamma{parse("K{a} p"), parse("q")};
  FormulaSet c = closureOfSet(gamma, kAB);
  CHECK(c.size() == 4);
  CHECK(c.contains(parse("K{a} p")));
  CHECK(c.contains(parse("D p")));
  CHECK(c.contains(parse("p")));
  CHECK(c.contains(parse("q")));
}

TEST_CASE("closure size is linear-ish at corpus scale") {
  // sanity guard: the closure of every corpus formula stays small
  for (Formula f : tests::exhaustiveCorpus(4)) {
    CHECK(closure(f, kAB).size() <= 40);
  }
}
