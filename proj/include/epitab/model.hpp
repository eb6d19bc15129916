#ifndef EPITAB_MODEL_HPP
#define EPITAB_MODEL_HPP

// ───────────────────────────────────────────────────────────────────────────
// Semantics: pseudo-models, the satisfaction relation, frame checking, a
// brute-force model enumerator (independent oracle), and JSON model I/O.
//
// A pseudo-model packages equivalence relations R_a per agent and R_D with
// R_D ⊆ ⋂_a R_a ("pseudo" frame condition); `genuine` records whether the
// inclusion is an equality.  R_C is always the transitive closure of ⋃_a R_a.
// Deriving a pseudo-model from a Hintikka structure takes the
// reflexive-symmetric-transitive closures of R_a ∪ R_D and of R_D, and the
// construction re-checks the truth lemma (every label member must evaluate
// true at its world) instead of assuming it.
// ───────────────────────────────────────────────────────────────────────────

#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "epitab/formula.hpp"
#include "epitab/hintikka.hpp"

namespace epitab {

struct PseudoModel {
  AgentSet agents;
  int worldCount = 0;
  std::vector<std::string> stateNames;     // one per world, unique
  std::map<std::string, Relation> ra;      // equivalence relation per agent
  Relation rd;                             // equivalence relation
  Relation rc;                             // transitive closure of ⋃_a R_a
  std::vector<std::string> atoms;          // the model's atom alphabet
  std::vector<std::set<std::string>> val;  // true atoms per world
  bool genuine = false;                    // R_D equals ⋂_a R_a
  std::vector<FormulaSet> labels;          // optional Hintikka labels (may be empty)
};

// Lemma-2 closures + truth-lemma re-check.  Throws std::invalid_argument when
// the structure fails validateHintikka and std::logic_error when a label
// member evaluates false in the derived model.
PseudoModel pseudoModelFromHintikka(const Maehs& hs);

// Standard recursive evaluation.  K and D quantify over R_a / R_D successors;
// C is evaluated both through the stored R_C and through ⋃_a R_a reachability
// (a world reaches itself), throwing std::logic_error if the two disagree.
// Atoms outside the model's alphabet are false.  Unknown worlds or agents
// throw std::invalid_argument.
bool satisfies(const PseudoModel& m, int world, Formula f);

// Both C evaluations for φ = C χ at one world: {relational, reachability}.
std::pair<bool, bool> commonBothWays(const PseudoModel& m, int world, Formula f);

// Equivalence laws per relation, R_D ⊆ ⋂_a R_a, R_C = transitive closure of
// the union, and the stored `genuine` flag.  Empty report = all good.
std::vector<std::string> checkFrameConditions(const PseudoModel& m);

// True iff R_D equals the intersection of all agent relations.
bool isGenuineFrame(const PseudoModel& m);

// Violations of the truth lemma over the stored labels (empty when the model
// has no labels).
std::vector<std::string> truthLemmaReport(const PseudoModel& m);

// Enumerates every genuine model with exactly `worlds` worlds: each agent
// relation ranges over the set partitions of the world set (restricted-growth
// order), R_D is the intersection, and valuations range over all assignments.
// Returns false iff `fn` stopped the enumeration by returning false.
bool enumerateModelsOfSize(int worlds, const AgentSet& agents,
                           const std::vector<std::string>& atoms,
                           const std::function<bool(const PseudoModel&)>& fn);

// Same, cumulatively for sizes 1..maxStates.
bool enumerateModels(const AgentSet& agents, const std::vector<std::string>& atoms,
                     int maxStates, const std::function<bool(const PseudoModel&)>& fn);

struct OracleResult {
  bool found = false;
  PseudoModel model;  // meaningful only when found
  int world = -1;     // witness world index
  int size = 0;       // world count of the witness
  int bound = 0;      // largest size searched
};

// First enumerated model/world satisfying φ at sizes 1..maxStates.  A miss is
// explicitly NOT an unsatisfiability verdict.  φ may use at most 2 atoms.
OracleResult bruteForceSat(Formula phi, const AgentSet& agents, int maxStates = 4);

// JSON model I/O.  Field order: agents, states, atoms, valuation, relations,
// rd, genuine[, labels].  Relations are unordered pair lists over state names
// (reflexive pairs implied); the loader closes them, recomputes R_C and the
// genuine flag, and rejects files whose stored flag or frame conditions lie.
std::string modelToJson(const PseudoModel& m, bool includeLabels = false);
PseudoModel modelFromJson(const std::string& text);

}  // namespace epitab

#endif  // EPITAB_MODEL_HPP
