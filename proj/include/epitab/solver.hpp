#ifndef EPITAB_SOLVER_HPP
#define EPITAB_SOLVER_HPP

// ───────────────────────────────────────────────────────────────────────────
// End-to-end decision procedure: pretableau construction, prestate
// elimination, state elimination, verdict, and — for satisfiable inputs —
// Hintikka-structure extraction plus pseudo-model derivation, with the
// witness re-checked against the input formula before it is reported.
// ───────────────────────────────────────────────────────────────────────────

#include <string>
#include <vector>

#include "epitab/formula.hpp"
#include "epitab/hintikka.hpp"
#include "epitab/model.hpp"
#include "epitab/tableau.hpp"

namespace epitab {

struct SolveOptions {
  bool strictRank = false;       // rank eventualities by the strict 1+max recurrence
  bool allowSingleAgent = false; // lift the |agents| >= 2 requirement (testing only)
};

struct SolveResult {
  Formula theta = nullptr;
  AgentSet agents;
  Verdict verdict = Verdict::Closed;

  Graph pretableau;
  Graph initialTableau;
  Graph finalTableau;
  std::vector<TraceEntry> trace;
  std::vector<Formula> eventualities;
  std::size_t clSize = 0;
  std::size_t eclSize = 0;

  // Witness artifacts; meaningful only when verdict == Open and
  // extractionError is empty.
  bool haveWitness = false;
  Maehs hintikka;
  PseudoModel witness;
  int designatedWorld = -1;
  // Open verdict whose extraction failed (possible only under strictRank,
  // where elimination may keep states the default extraction cannot use;
  // in default mode such a failure throws instead).
  std::string extractionError;
};

// Decides θ over the given agent set.  Throws std::invalid_argument when the
// agent set is too small (fewer than 2 without allowSingleAgent) or does not
// cover the agents occurring in θ, and std::logic_error when an Open verdict
// fails its own witness re-check in default rank mode.
SolveResult solve(Formula theta, const AgentSet& agents, const SolveOptions& opts = {});

}  // namespace epitab

#endif  // EPITAB_SOLVER_HPP
