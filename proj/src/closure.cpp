#include "epitab/closure.hpp"

namespace epitab {

FormulaSet closureOfSet(const FormulaSet& members, const AgentSet& agents) {
  FormulaSet cl;
  std::vector<Formula> work;
  auto add = [&](Formula f) {
    if (cl.insert(f)) work.push_back(f);
  };
  for (Formula f : members) add(f);
  for (std::size_t i = 0; i < work.size(); ++i) {
    Formula f = work[i];
    switch (f->kind) {
      case Kind::Atom:
        break;
      case Kind::Not:
        add(f->left);
        break;
      case Kind::And:
        add(f->left);
        add(f->right);
        break;
      case Kind::Knows:
        add(f->left);
        add(dist(f->left));
        break;
      case Kind::Dist:
        add(f->left);
        break;
      case Kind::Common: {
        add(f->left);
        Formula conj = mkAnd(f->left, f);
        for (const auto& a : agents) add(knows(a, conj));
        break;
      }
    }
  }
  return cl;
}

FormulaSet closure(Formula theta, const AgentSet& agents) {
  return closureOfSet(FormulaSet{theta}, agents);
}

FormulaSet extendedClosure(Formula theta, const AgentSet& agents) {
  FormulaSet cl = closure(theta, agents);
  FormulaSet ecl;
  for (Formula f : cl) {
    ecl.insert(f);
    ecl.insert(mkNot(f));
  }
  return ecl;
}

}  // namespace epitab
