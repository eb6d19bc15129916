#include "epitab/expansion.hpp"

#include <deque>
#include <set>

#include "epitab/closure.hpp"

namespace epitab {

bool isPatentlyInconsistent(const FormulaSet& s) {
  for (Formula f : s)
    if (f->kind == Kind::Not && s.contains(f->left)) return true;
  return false;
}

namespace {

bool decided(const FormulaSet& s, Formula f) {
  return s.contains(f) || s.contains(mkNot(f));
}

// Applies the non-branching saturation clauses to a fixpoint.
void saturate(FormulaSet& s, const AgentSet& agents) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Formula> snap(s.begin(), s.end());
    for (Formula f : snap) {
      switch (f->kind) {
        case Kind::Not:
          if (f->left->kind == Kind::Not) changed |= s.insert(f->left->left);
          break;
        case Kind::And:
          changed |= s.insert(f->left);
          changed |= s.insert(f->right);
          break;
        case Kind::Knows:
          changed |= s.insert(dist(f->left));
          break;
        case Kind::Dist:
          changed |= s.insert(f->left);
          break;
        case Kind::Common: {
          Formula conj = mkAnd(f->left, f);
          for (const auto& a : agents) changed |= s.insert(knows(a, conj));
          break;
        }
        default:
          break;
      }
    }
  }
}

// First K/D-shaped subformula of a member that the set does not decide
// (canonical scan order).
Formula firstUndecidedBox(const FormulaSet& s) {
  for (Formula f : s)
    for (Formula k : subformulaeCached(f))
      if (isBox(k) && !decided(s, k)) return k;
  return nullptr;
}

struct Branch {
  FormulaSet set;
  std::set<Formula> forkedNotAnd;  // ~(φ & ψ) instances already branched on
  std::set<Formula> forkedNotC;    // ~C φ instances already branched on
};

}  // namespace

bool isFullyExpanded(const FormulaSet& s, const AgentSet& agents) {
  for (Formula f : s) {
    switch (f->kind) {
      case Kind::And:
        if (!s.contains(f->left) || !s.contains(f->right)) return false;
        break;
      case Kind::Knows:
        if (!s.contains(dist(f->left))) return false;
        break;
      case Kind::Dist:
        if (!s.contains(f->left)) return false;
        break;
      case Kind::Common: {
        Formula conj = mkAnd(f->left, f);
        for (const auto& a : agents)
          if (!s.contains(knows(a, conj))) return false;
        break;
      }
      case Kind::Not: {
        Formula b = f->left;
        if (b->kind == Kind::Not) {
          if (!s.contains(b->left)) return false;
        } else if (b->kind == Kind::And) {
          if (!s.contains(mkNot(b->left)) && !s.contains(mkNot(b->right))) return false;
        } else if (b->kind == Kind::Common) {
          Formula conj = mkAnd(b->left, b);
          bool any = false;
          for (const auto& a : agents)
            if (s.contains(mkNot(knows(a, conj)))) {
              any = true;
              break;
            }
          if (!any) return false;
        }
        break;
      }
      default:
        break;
    }
    for (Formula k : subformulaeCached(f))
      if (isBox(k) && !decided(s, k)) return false;
  }
  return true;
}

std::vector<FormulaSet> fullExpansions(const FormulaSet& gamma, const AgentSet& agents) {
  // Boxes derived from C χ in the closure of Γ that every consistent state
  // must decide (see the header comment).
  std::vector<Formula> trigC;
  {
    FormulaSet cl = closureOfSet(gamma, agents);
    for (Formula f : cl)
      if (f->kind == Kind::Common) trigC.push_back(f);
  }

  std::deque<Branch> work;
  work.push_back(Branch{gamma, {}, {}});
  std::vector<FormulaSet> out;
  std::set<FormulaSet> seen;
  auto emit = [&](const FormulaSet& s) {
    if (seen.insert(s).second) out.push_back(s);
  };

  while (!work.empty()) {
    Branch b = std::move(work.front());
    work.pop_front();
    saturate(b.set, agents);

    if (isPatentlyInconsistent(b.set)) {
      // Complete without branching: first disjunct, first agent, negative box.
      bool changed = true;
      while (changed) {
        changed = false;
        saturate(b.set, agents);
        for (Formula f : b.set) {
          if (f->kind != Kind::Not) continue;
          Formula body = f->left;
          if (body->kind == Kind::And && !b.forkedNotAnd.count(f)) {
            b.forkedNotAnd.insert(f);
            if (!b.set.contains(mkNot(body->left)) && !b.set.contains(mkNot(body->right)))
              b.set.insert(mkNot(body->left));
            changed = true;
            break;
          }
          if (body->kind == Kind::Common && !b.forkedNotC.count(f)) {
            b.forkedNotC.insert(f);
            Formula conj = mkAnd(body->left, body);
            bool any = false;
            for (const auto& a : agents)
              if (b.set.contains(mkNot(knows(a, conj)))) {
                any = true;
                break;
              }
            if (!any) b.set.insert(mkNot(knows(*agents.begin(), conj)));
            changed = true;
            break;
          }
        }
        if (!changed) {
          Formula k = firstUndecidedBox(b.set);
          if (k) {
            b.set.insert(mkNot(k));
            changed = true;
          }
        }
      }
      emit(b.set);
      continue;
    }

    // 1) un-branched ~(φ & ψ): fork over both disjuncts
    Formula na = nullptr;
    for (Formula f : b.set)
      if (f->kind == Kind::Not && f->left->kind == Kind::And && !b.forkedNotAnd.count(f)) {
        na = f;
        break;
      }
    if (na) {
      b.forkedNotAnd.insert(na);
      for (Formula alt : {mkNot(na->left->left), mkNot(na->left->right)}) {
        Branch child = b;
        child.set.insert(alt);
        work.push_back(std::move(child));
      }
      continue;
    }

    // 2) un-branched ~C φ: fork over the witnessing agent
    Formula nc = nullptr;
    for (Formula f : b.set)
      if (f->kind == Kind::Not && f->left->kind == Kind::Common && !b.forkedNotC.count(f)) {
        nc = f;
        break;
      }
    if (nc) {
      b.forkedNotC.insert(nc);
      Formula conj = mkAnd(nc->left->left, nc->left);
      for (const auto& a : agents) {
        Branch child = b;
        child.set.insert(mkNot(knows(a, conj)));
        work.push_back(std::move(child));
      }
      continue;
    }

    // 3) undecided K/D subformula of a member; 4) undecided C-derived box
    Formula k = firstUndecidedBox(b.set);
    if (!k) {
      for (Formula cf : trigC) {
        Formula conj = mkAnd(cf->left, cf);
        for (const auto& a : agents) {
          Formula ka = knows(a, conj);
          if (!decided(b.set, ka)) {
            k = ka;
            break;
          }
        }
        if (!k) {
          Formula dc = dist(conj);
          if (!decided(b.set, dc)) k = dc;
        }
        if (k) break;
      }
    }
    if (k) {
      Branch pos = b;
      pos.set.insert(k);
      work.push_back(std::move(pos));
      Branch neg = std::move(b);
      neg.set.insert(mkNot(k));
      work.push_back(std::move(neg));
      continue;
    }

    emit(b.set);
  }
  return out;
}

std::vector<Formula> eventualitiesOf(const std::vector<FormulaSet>& sets) {
  FormulaSet acc;
  for (const auto& s : sets)
    for (Formula f : s)
      if (isEventuality(f)) acc.insert(f);
  return {acc.begin(), acc.end()};
}

}  // namespace epitab
