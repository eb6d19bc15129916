#ifndef EPITAB_CLOSURE_HPP
#define EPITAB_CLOSURE_HPP

// Closure of a formula: the least set that contains it, is closed under
// subformulae, contains D φ for every K{a} φ it contains, and contains
// K{a} (φ & C φ) for every agent a and every C φ it contains.  The extended
// closure adds the negation of every member.

#include "epitab/formula.hpp"

namespace epitab {

FormulaSet closure(Formula theta, const AgentSet& agents);
FormulaSet closureOfSet(const FormulaSet& members, const AgentSet& agents);
FormulaSet extendedClosure(Formula theta, const AgentSet& agents);

}  // namespace epitab

#endif  // EPITAB_CLOSURE_HPP
