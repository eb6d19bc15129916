#ifndef EPITAB_HINTIKKA_HPP
#define EPITAB_HINTIKKA_HPP

// ───────────────────────────────────────────────────────────────────────────
// Hintikka-structure extraction from an open final tableau.
//
// A Hintikka structure is a labelled graph whose labels are final-tableau
// states and whose typed edges (one relation per agent plus one for
// distributed knowledge) satisfy the local coherence conditions H1–H9
// checked by validateHintikka.  It is built from tree *components*: for a
// state Δ and an eventuality ξ = ~C φ, the component either realizes ξ
// (a spine descending in rank to a state containing ~φ, every spine node
// getting one child per remaining diamond) or, when ξ ∉ Δ, is the one-level
// tree with one child per diamond of Δ.  Components are stitched on a grid
// indexed by (eventuality, state): each round replaces every current leaf
// with the component of the next eventuality in cyclic order, reusing the
// root of an already-instantiated grid cell instead of growing a new copy.
// ───────────────────────────────────────────────────────────────────────────

#include "epitab/tableau.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace epitab {

using WorldPair = std::pair<int, int>;
using Relation = std::set<WorldPair>;

Relation transitiveClosure(Relation r, int n);
Relation rstClosure(Relation r, int n);  // reflexive-symmetric-transitive

struct Maehs {
  AgentSet agents;
  int worldCount = 0;
  std::map<std::string, Relation> ra;  // one relation per agent
  Relation rd;
  Relation rc;  // transitive closure of rd ∪ ⋃ ra (not reflexive)
  std::vector<FormulaSet> labels;
  std::vector<NodeId> sourceState;  // final-tableau state behind each world
  int designated = 0;
};

struct ComponentNode {
  NodeId state;
  int parent;         // -1 for the root
  char relType;       // 'K' or 'D' (edge from parent); unset for the root
  std::string agent;  // set when relType == 'K'
  bool leaf;          // true for unexpanded diamond children
};

struct Component {
  std::vector<ComponentNode> nodes;  // [0] is the root; spine nodes first
};

// eventuality == nullptr (or an eventuality not in the state) requests a
// plain one-level component.
Component buildComponent(NodeId state, Formula eventuality, const Graph& finalTableau);

Maehs stitchHintikka(const Graph& finalTableau, Formula theta, const AgentSet& agents);

// Structural validation (H1–H9 plus the closure condition on rc); the
// overload with theta additionally requires a world labelled with theta.
std::vector<std::string> validateHintikka(const Maehs& hs);
std::vector<std::string> validateHintikka(const Maehs& hs, Formula theta);

std::string maehsToJson(const Maehs& hs);

}  // namespace epitab

#endif  // EPITAB_HINTIKKA_HPP
