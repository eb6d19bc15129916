#include "epitab/solver.hpp"

#include <stdexcept>

#include "epitab/closure.hpp"

namespace epitab {

SolveResult solve(Formula theta, const AgentSet& agents, const SolveOptions& opts) {
  if (!theta) throw std::invalid_argument("solve(): null formula");
  if (agents.empty()) throw std::invalid_argument("solve(): empty agent set");
  if (agents.size() < 2 && !opts.allowSingleAgent)
    throw std::invalid_argument("solve(): at least 2 agents required, got \"" +
                                agents.csv() + "\"");
  for (const auto& a : agentsIn(theta))
    if (!agents.contains(a))
      throw std::invalid_argument("solve(): formula mentions agent \"" + a +
                                  "\" outside the agent set \"" + agents.csv() + "\"");

  SolveResult r;
  r.theta = theta;
  r.agents = agents;
  r.clSize = closure(theta, agents).size();
  r.eclSize = extendedClosure(theta, agents).size();

  r.pretableau = buildPretableau(theta, agents);
  r.initialTableau = eliminatePrestates(r.pretableau);
  auto elim = eliminateStates(r.initialTableau,
                              opts.strictRank ? RankMode::StrictMax : RankMode::PathMin);
  r.finalTableau = std::move(elim.finalTableau);
  r.trace = std::move(elim.trace);
  r.eventualities = std::move(elim.eventualities);
  r.verdict = verdict(r.finalTableau, theta);
  if (r.verdict == Verdict::Closed) return r;

  // Open: extract a Hintikka structure, derive the pseudo-model, and re-check
  // θ at the designated world.  In default rank mode any failure here is a
  // soundness bug and escalates; under strictRank it is recorded instead,
  // because that mode's eliminations are not what the extraction was built on.
  try {
    r.hintikka = stitchHintikka(r.finalTableau, theta, agents);
    auto bad = validateHintikka(r.hintikka, theta);
    if (!bad.empty())
      throw std::logic_error("solve(): extracted structure fails validation: " + bad.front());
    r.witness = pseudoModelFromHintikka(r.hintikka);
    r.designatedWorld = r.hintikka.designated;
    if (!r.witness.labels[r.designatedWorld].contains(theta))
      throw std::logic_error("solve(): designated world is not labelled with \"" +
                             render(theta) + "\"");
    if (!satisfies(r.witness, r.designatedWorld, theta))
      throw std::logic_error("solve(): witness re-check failed: \"" + render(theta) +
                             "\" is false at the designated world");
    r.haveWitness = true;
  } catch (const std::exception& e) {
    if (!opts.strictRank) throw;
    r.extractionError = e.what();
  }
  return r;
}

}  // namespace epitab
