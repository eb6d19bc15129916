#ifndef EPITAB_EXPANSION_HPP
#define EPITAB_EXPANSION_HPP

// Full expansions of a prestate.
//
// A set Δ is fully expanded when it is closed under the local saturation
// clauses: ~~φ forces φ; φ & ψ forces both conjuncts; ~(φ & ψ) forces a
// negated conjunct; K{a} φ forces D φ; D φ forces φ; C φ forces
// K{a} (φ & C φ) for every agent; ~C φ forces ~K{a} (φ & C φ) for some agent;
// and every K/D subformula of a member is decided (present or negated).
//
// fullExpansions(Γ) produces the deterministic family of fully expanded
// extensions of Γ used as tableau states.  Branching clauses fork over all
// alternatives (keeping branches that re-add a formula already present), and
// in addition every box K{x} (χ & C χ) and D (χ & C χ) for a C χ in the
// closure of Γ is decided.  That extra decision is what makes box membership
// invariant along the epistemic edges built during model extraction; without
// it the extracted structures can disagree on derived boxes across an edge.
// Branches that become patently inconsistent stop forking and are completed
// deterministically — they can never survive elimination, so their only role
// is to stand in as eliminated successors.

#include "epitab/formula.hpp"

#include <vector>

namespace epitab {

bool isPatentlyInconsistent(const FormulaSet& s);
bool isFullyExpanded(const FormulaSet& s, const AgentSet& agents);

std::vector<FormulaSet> fullExpansions(const FormulaSet& gamma, const AgentSet& agents);

// All ~C-shaped members of the given sets, in rendering order, without
// duplicates.
std::vector<Formula> eventualitiesOf(const std::vector<FormulaSet>& sets);

}  // namespace epitab

#endif  // EPITAB_EXPANSION_HPP
