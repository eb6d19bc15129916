#include <doctest.h>

#include <set>

#include "corpus.hpp"
#include "epitab/closure.hpp"
#include "epitab/tableau.hpp"

using namespace epitab;

namespace {
const AgentSet kAB = AgentSet::fromCsv("a,b");

bool isState(const Graph& g, NodeId id) {
  const Node* n = g.nodeById(id);
  return n && n->kind == NodeKind::State;
}
}  // namespace

TEST_CASE("pretableau alternates prestates and states") {
  Graph g = buildPretableau(parse("~K{a} p & C q"), kAB);
  CHECK(g.prestateCount() >= 1);
  CHECK(g.stateCount() >= 1);
  const Node* root = g.nodeById(g.root);
  REQUIRE(root != nullptr);
  CHECK(root->kind == NodeKind::Prestate);
  CHECK(root->formulas == FormulaSet{parse("~K{a} p & C q")});
  for (const auto& e : g.doubleEdges) {
    CHECK(g.nodeById(e.from)->kind == NodeKind::Prestate);
    CHECK(g.nodeById(e.to)->kind == NodeKind::State);
  }
  for (const auto& e : g.markedEdges) {
    CHECK(g.nodeById(e.from)->kind == NodeKind::State);
    CHECK(g.nodeById(e.to)->kind == NodeKind::Prestate);
    CHECK(isDiamond(e.label));
    CHECK(g.nodeById(e.from)->formulas.contains(e.label));
  }
}

TEST_CASE("states serve every diamond unless patently inconsistent") {
  Graph g = buildPretableau(parse("~K{a} p & ~D q"), kAB);
  for (const auto& n : g.nodes) {
    if (n.kind != NodeKind::State) continue;
    bool inconsistent = false;
    for (Formula f : n.formulas)
      if (isNot(f) && n.formulas.contains(f->left)) inconsistent = true;
    std::set<Formula> served;
    for (const auto& e : g.markedEdges)
      if (e.from == n.id) served.insert(e.label);
    if (inconsistent) {
      CHECK(served.empty());
    } else {
      for (Formula f : n.formulas)
        if (isDiamond(f)) CHECK(served.count(f) == 1);
    }
  }
}

TEST_CASE("prestate elimination reroutes marked edges through expansions") {
  Graph pre = buildPretableau(parse("~K{a} p"), kAB);
  Graph init = eliminatePrestates(pre);
  CHECK(init.prestateCount() == 0);
  CHECK(init.stateCount() == pre.stateCount());
  CHECK(init.doubleEdges.empty());
  for (const auto& e : init.markedEdges) {
    CHECK(isState(init, e.from));
    CHECK(isState(init, e.to));
  }
  // state ids survive the phase unchanged
  for (const auto& n : init.nodes) {
    const Node* old = pre.nodeById(n.id);
    REQUIRE(old != nullptr);
    CHECK(old->formulas == n.formulas);
  }
  // every pretableau marked edge, through every expansion of its target,
  // appears in the initial tableau
  for (const auto& me : pre.markedEdges)
    for (const auto& de : pre.doubleEdges)
      if (de.from == me.to) {
        bool found = false;
        for (const auto& e : init.markedEdges)
          if (e.from == me.from && e.label == me.label && e.to == de.to) found = true;
        CHECK(found);
      }
}

TEST_CASE("rank: path mode measures distance, strict mode demands realization") {
  // Synthetic graph.  Eventuality ~C p; realizer contains ~p.
  //   A --chi1--> B(realizer),  A --chi2--> A (self loop only for chi2)
  Formula ev = parse("~C p");
  Formula chi1 = parse("~K{a} (p & C p)");
  Formula chi2 = parse("~K{b} (p & C p)");
  Graph g;
  g.nodes.push_back({0, NodeKind::State, FormulaSet{ev, chi1, chi2}});
  g.nodes.push_back({1, NodeKind::State, FormulaSet{parse("~p")}});
  g.markedEdges.push_back({0, chi1, 1});
  g.markedEdges.push_back({0, chi2, 0});
  std::vector<char> alive{1, 1};

  auto pathRanks = computeRanks(g, alive, ev, RankMode::PathMin);
  CHECK(pathRanks[0] == 1);  // one hop to the realizer
  CHECK(pathRanks[1] == 0);

  auto strictRanks = computeRanks(g, alive, ev, RankMode::StrictMax);
  CHECK(strictRanks[0] == OMEGA);  // chi2 can only loop, so 1+max diverges
  CHECK(strictRanks[1] == 0);

  // once the self loop goes away, both modes agree
  g.markedEdges.pop_back();
  CHECK(computeRanks(g, alive, ev, RankMode::PathMin)[0] == 1);
  CHECK(computeRanks(g, alive, ev, RankMode::StrictMax)[0] == 1);
}

TEST_CASE("rank treats dead nodes as absent") {
  Formula ev = parse("~C p");
  Formula chi = parse("~K{a} (p & C p)");
  Graph g;
  g.nodes.push_back({0, NodeKind::State, FormulaSet{ev, chi}});
  g.nodes.push_back({1, NodeKind::State, FormulaSet{parse("~p")}});
  g.markedEdges.push_back({0, chi, 1});
  std::vector<char> alive{1, 0};  // realizer removed
  CHECK(computeRanks(g, alive, ev, RankMode::PathMin)[0] == OMEGA);
  CHECK(computeRanks(g, alive, ev, RankMode::StrictMax)[0] == OMEGA);
}

TEST_CASE("contradictory inputs close the tableau") {
  for (const char* t : {"p & ~p", "K{a} p & ~D p", "C p & ~p", "C p & ~K{a} p",
                        "D p & ~p", "C p & ~D p", "K{a} (p & q) & ~K{a} p & C p"}) {
    CAPTURE(t);
    Graph pre = buildPretableau(parse(t), kAB);
    auto res = eliminateStates(eliminatePrestates(pre), RankMode::PathMin);
    CHECK(verdict(res.finalTableau, parse(t)) == Verdict::Closed);
  }
}

TEST_CASE("satisfiable inputs stay open and keep the input state") {
  for (const char* t : {"p", "~p", "C p", "~K{a} p", "~C p", "K{a} p & K{b} p",
                        "D p & ~K{a} q"}) {
    CAPTURE(t);
    Formula f = parse(t);
    auto res = eliminateStates(eliminatePrestates(buildPretableau(f, kAB)),
                               RankMode::PathMin);
    REQUIRE(verdict(res.finalTableau, f) == Verdict::Open);
    bool hasTheta = false;
    for (const auto& n : res.finalTableau.nodes)
      if (n.formulas.contains(f)) hasTheta = true;
    CHECK(hasTheta);
  }
}

TEST_CASE("the trace lists one removal per stage in replayable form") {
  Formula f = parse("p & ~p");
  auto res = eliminateStates(eliminatePrestates(buildPretableau(f, kAB)),
                             RankMode::PathMin);
  REQUIRE(res.trace.size() == 1);
  CHECK(res.trace[0].stage == 1);
  CHECK(res.trace[0].rule == 1);
  CHECK(res.trace[0].reason == nullptr);
  CHECK(formatTrace(res.trace) ==
        "stage=1 rule=E1 node=" + std::to_string(res.trace[0].node) + " reason=-\n");

  // stages are consecutive, rules valid, removed nodes really gone
  Formula g = parse("~C p & C q");
  auto res2 = eliminateStates(eliminatePrestates(buildPretableau(g, kAB)),
                              RankMode::PathMin);
  std::size_t expect = 1;
  for (const auto& e : res2.trace) {
    CHECK(e.stage == expect++);
    CHECK((e.rule == 1 || e.rule == 2 || e.rule == 3));
    CHECK(res2.finalTableau.nodeById(e.node) == nullptr);
    if (e.rule == 1) CHECK(e.reason == nullptr);
    if (e.rule == 2) REQUIRE(e.reason != nullptr);
    if (e.rule == 2) CHECK(isDiamond(e.reason));
    if (e.rule == 3) REQUIRE(e.reason != nullptr);
    if (e.rule == 3) CHECK(isEventuality(e.reason));
  }
}

TEST_CASE("starvation removals happen even without eventualities") {
  // ~K{a} p & ~D p is satisfiable; K{a} p & ~D p is not: its only state is
  // inconsistent, and nothing remains to serve any diamond.
  Formula f = parse("K{a} p & ~D p");
  auto res = eliminateStates(eliminatePrestates(buildPretableau(f, kAB)),
                             RankMode::PathMin);
  CHECK(res.finalTableau.stateCount() == 0);
  CHECK(res.eventualities.empty());
}

TEST_CASE("elimination is deterministic") {
  Formula f = parse("~C p & ~K{a} q");
  auto a = eliminateStates(eliminatePrestates(buildPretableau(f, kAB)),
                           RankMode::PathMin);
  auto b = eliminateStates(eliminatePrestates(buildPretableau(f, kAB)),
                           RankMode::PathMin);
  CHECK(formatTrace(a.trace) == formatTrace(b.trace));
  CHECK(exportDot(a.finalTableau, Stage::Final) == exportDot(b.finalTableau, Stage::Final));
}

TEST_CASE("DOT export is stable and stage-labelled") {
  Formula f = parse("~K{a} p");
  Graph pre = buildPretableau(f, kAB);
  std::string dot = exportDot(pre, Stage::Pretableau);
  CHECK(dot.find("digraph pretableau") == 0);
  CHECK(dot.find("style=dashed") != std::string::npos);   // prestates dashed
  CHECK(dot.find("color=\"black:invis:black\"") != std::string::npos);
  CHECK(exportDot(pre, Stage::Pretableau) == dot);
  Graph init = eliminatePrestates(pre);
  CHECK(exportDot(init, Stage::Initial).find("digraph initial_tableau") == 0);
  auto fin = eliminateStates(init, RankMode::PathMin);
  CHECK(exportDot(fin.finalTableau, Stage::Final).find("digraph final_tableau") == 0);
}

TEST_CASE("node count respects the extended-closure bound on the corpus") {
  for (Formula f : tests::exhaustiveCorpus(3)) {
    Graph pre = buildPretableau(f, kAB);
    // bound: prestates + states <= 2 * 2^|ecl|; ecl here is small, so the
    // check is meaningful rather than vacuous
    FormulaSet cl = closureOfSet(FormulaSet{f}, kAB);
    std::size_t ecl = 2 * cl.size();
    for (Formula g : cl)
      if (isNot(g)) --ecl;
    if (ecl >= 40) continue;
    long double bound = 2.0L;
    for (std::size_t i = 0; i < ecl; ++i) bound *= 2.0L;
    CHECK(static_cast<long double>(pre.nodes.size()) <= bound);
  }
}
