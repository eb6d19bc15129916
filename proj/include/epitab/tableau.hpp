#ifndef EPITAB_TABLEAU_HPP
#define EPITAB_TABLEAU_HPP

// ───────────────────────────────────────────────────────────────────────────
// Incremental tableau for satisfiability.
//
// Construction alternates two node kinds.  A *prestate* is an arbitrary
// formula set awaiting expansion; SR links it by unmarked double edges to
// every full expansion (its *states*).  For each ~K{a} φ in a consistent
// state, KR builds the prestate {~φ} ∪ {K{a} ψ, ~K{a} ψ in the state}; for
// each ~D φ, DR builds {~φ} ∪ {D ψ, ~D ψ, K{x} ψ, ~K{x} ψ in the state}.
// Nodes are identified by formula-set equality within their kind, so the
// graph is finite.
//
// PR then discards prestates, rerouting each marked edge through the double
// edges of its target.  State elimination removes one node per stage:
//   E1  patently inconsistent states (once, up front);
//   E2  states with a diamond whose successors are all eliminated;
//   E3  states with an eventuality ~C φ of rank ω, where the rank measures
//       the distance to a state containing ~φ (recomputed after every
//       removal).  E3 and E2 are dovetailed per eventuality until a full
//       cycle removes nothing.
// The input formula is satisfiable iff it survives in some final state.
// ───────────────────────────────────────────────────────────────────────────

#include "epitab/formula.hpp"

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace epitab {

using NodeId = std::size_t;
inline constexpr std::size_t OMEGA = std::numeric_limits<std::size_t>::max();

enum class NodeKind { Prestate, State };

struct Node {
  NodeId id;
  NodeKind kind;
  FormulaSet formulas;
};

struct DoubleEdge {
  NodeId from, to;  // prestate ⟹ state
};

struct MarkedEdge {
  NodeId from;    // state
  Formula label;  // the ~K{a} φ or ~D φ being served
  NodeId to;      // prestate before PR, state afterwards
};

struct Graph {
  std::vector<Node> nodes;  // ascending by id (ids are stable across phases)
  std::vector<DoubleEdge> doubleEdges;
  std::vector<MarkedEdge> markedEdges;
  NodeId root = 0;

  const Node* nodeById(NodeId id) const;
  std::size_t stateCount() const;
  std::size_t prestateCount() const;
};

enum class Stage { Pretableau, Initial, Final };
enum class Verdict { Open, Closed };
enum class RankMode {
  PathMin,    // distance to a realizing state over all marked edges (default)
  StrictMax,  // 1 + max over labels of the min successor rank
};

struct TraceEntry {
  std::size_t stage;  // 1-based, consecutive; one node removed per stage
  int rule;           // 1, 2 or 3
  NodeId node;
  Formula reason;     // E2: the starved diamond; E3: the eventuality; E1: null
};

std::string formatTrace(const std::vector<TraceEntry>& trace);

Graph buildPretableau(Formula theta, const AgentSet& agents);
Graph eliminatePrestates(const Graph& pretableau);

// Rank of each node position with respect to one eventuality, over the live
// part of the graph.  `alive` is indexed by node position (not id).
std::vector<std::size_t> computeRanks(const Graph& t, const std::vector<char>& alive,
                                      Formula eventuality, RankMode mode);

struct EliminationResult {
  Graph finalTableau;
  std::vector<TraceEntry> trace;
  std::vector<Formula> eventualities;  // the list the schedule cycled over
};

EliminationResult eliminateStates(const Graph& initial, RankMode mode);

Verdict verdict(const Graph& finalTableau, Formula theta);

std::string exportDot(const Graph& g, Stage stage);

}  // namespace epitab

#endif  // EPITAB_TABLEAU_HPP
