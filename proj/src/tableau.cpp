#include "epitab/tableau.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "epitab/expansion.hpp"

namespace epitab {

const Node* Graph::nodeById(NodeId id) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), id,
                             [](const Node& n, NodeId v) { return n.id < v; });
  if (it == nodes.end() || it->id != id) return nullptr;
  return &*it;
}

std::size_t Graph::stateCount() const {
  std::size_t n = 0;
  for (const auto& nd : nodes)
    if (nd.kind == NodeKind::State) ++n;
  return n;
}

std::size_t Graph::prestateCount() const {
  std::size_t n = 0;
  for (const auto& nd : nodes)
    if (nd.kind == NodeKind::Prestate) ++n;
  return n;
}

namespace {

FormulaSet krTarget(const FormulaSet& delta, Formula chi) {
  const std::string& a = chi->left->name;  // chi = ~K{a} φ
  FormulaSet g;
  g.insert(mkNot(chi->left->left));
  for (Formula f : delta) {
    if (f->kind == Kind::Knows && f->name == a) g.insert(f);
    if (f->kind == Kind::Not && f->left->kind == Kind::Knows && f->left->name == a)
      g.insert(f);
  }
  return g;
}

FormulaSet drTarget(const FormulaSet& delta, Formula chi) {
  FormulaSet g;
  g.insert(mkNot(chi->left->left));
  for (Formula f : delta) {
    if (f->kind == Kind::Dist || f->kind == Kind::Knows) g.insert(f);
    if (f->kind == Kind::Not &&
        (f->left->kind == Kind::Dist || f->left->kind == Kind::Knows))
      g.insert(f);
  }
  return g;
}

std::map<NodeId, std::size_t> positionIndex(const Graph& g) {
  std::map<NodeId, std::size_t> pos;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) pos[g.nodes[i].id] = i;
  return pos;
}

}  // namespace

Graph buildPretableau(Formula theta, const AgentSet& agents) {
  Graph g;
  std::map<FormulaSet, NodeId> preByContent, stByContent;
  std::deque<NodeId> pendingPre, pendingSt;

  auto newNode = [&](NodeKind k, FormulaSet fs) {
    NodeId id = g.nodes.size();
    g.nodes.push_back(Node{id, k, std::move(fs)});
    return id;
  };

  g.root = newNode(NodeKind::Prestate, FormulaSet{theta});
  preByContent[g.nodes[g.root].formulas] = g.root;
  pendingPre.push_back(g.root);

  while (!pendingPre.empty() || !pendingSt.empty()) {
    while (!pendingPre.empty()) {
      NodeId pid = pendingPre.front();
      pendingPre.pop_front();
      FormulaSet gamma = g.nodes[pid].formulas;
      for (const FormulaSet& ext : fullExpansions(gamma, agents)) {
        NodeId sid;
        auto it = stByContent.find(ext);
        if (it == stByContent.end()) {
          sid = newNode(NodeKind::State, ext);
          stByContent[ext] = sid;
          pendingSt.push_back(sid);
        } else {
          sid = it->second;
        }
        g.doubleEdges.push_back({pid, sid});
      }
    }
    while (!pendingSt.empty()) {
      NodeId sid = pendingSt.front();
      pendingSt.pop_front();
      FormulaSet delta = g.nodes[sid].formulas;
      if (isPatentlyInconsistent(delta)) continue;  // KR/DR skip such states
      for (Formula f : delta) {
        if (!isDiamond(f)) continue;
        FormulaSet target = isDiamondK(f) ? krTarget(delta, f) : drTarget(delta, f);
        NodeId pid;
        auto it = preByContent.find(target);
        if (it == preByContent.end()) {
          pid = newNode(NodeKind::Prestate, std::move(target));
          preByContent[g.nodes[pid].formulas] = pid;
          pendingPre.push_back(pid);
        } else {
          pid = it->second;
        }
        g.markedEdges.push_back({sid, f, pid});
      }
    }
  }
  return g;
}

Graph eliminatePrestates(const Graph& p) {
  Graph t;
  t.root = p.root;
  std::map<NodeId, std::vector<NodeId>> expansionsOf;
  for (const auto& de : p.doubleEdges) expansionsOf[de.from].push_back(de.to);
  for (const auto& n : p.nodes)
    if (n.kind == NodeKind::State) t.nodes.push_back(n);
  for (const auto& me : p.markedEdges)
    for (NodeId target : expansionsOf[me.to])
      t.markedEdges.push_back({me.from, me.label, target});
  return t;
}

std::vector<std::size_t> computeRanks(const Graph& t, const std::vector<char>& alive,
                                      Formula eventuality, RankMode mode) {
  const std::size_t n = t.nodes.size();
  std::vector<std::size_t> rank(n, OMEGA);
  Formula notPhi = mkNot(eventuality->left->left);
  auto pos = positionIndex(t);

  if (mode == RankMode::PathMin) {
    std::vector<std::vector<std::size_t>> rev(n);
    for (const auto& me : t.markedEdges) {
      std::size_t f = pos.at(me.from), to = pos.at(me.to);
      if (alive[f] && alive[to]) rev[to].push_back(f);
    }
    std::deque<std::size_t> q;
    for (std::size_t i = 0; i < n; ++i)
      if (alive[i] && t.nodes[i].formulas.contains(notPhi)) {
        rank[i] = 0;
        q.push_back(i);
      }
    while (!q.empty()) {
      std::size_t i = q.front();
      q.pop_front();
      for (std::size_t f : rev[i])
        if (rank[f] == OMEGA) {
          rank[f] = rank[i] + 1;
          q.push_back(f);
        }
    }
    return rank;
  }

  // StrictMax: rank = 1 + max over labels of the min successor rank,
  // starting from 0 on states containing ~φ and ω elsewhere, decreasing to a
  // fixpoint.  A label whose successors are all eliminated contributes ω.
  std::vector<std::map<Formula, std::vector<std::size_t>>> adj(n);
  for (const auto& me : t.markedEdges) {
    std::size_t f = pos.at(me.from), to = pos.at(me.to);
    if (alive[f] && alive[to]) adj[f][me.label].push_back(to);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (alive[i] && t.nodes[i].formulas.contains(notPhi)) rank[i] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i] || t.nodes[i].formulas.contains(notPhi) || adj[i].empty()) continue;
      std::size_t worst = 0;
      for (const auto& [label, succs] : adj[i]) {
        (void)label;
        std::size_t best = OMEGA;
        for (std::size_t j : succs) best = std::min(best, rank[j]);
        worst = (best == OMEGA) ? OMEGA : std::max(worst, best);
        if (worst == OMEGA) break;
      }
      std::size_t cand = (worst == OMEGA) ? OMEGA : worst + 1;
      if (cand < rank[i]) {
        rank[i] = cand;
        changed = true;
      }
    }
  }
  return rank;
}

EliminationResult eliminateStates(const Graph& t0, RankMode mode) {
  Graph g = t0;
  const std::size_t n = g.nodes.size();
  std::vector<char> alive(n, 1);
  std::vector<TraceEntry> trace;
  std::size_t stage = 0;
  auto pos = positionIndex(g);

  auto remove = [&](std::size_t i, int rule, Formula reason) {
    alive[i] = 0;
    ++stage;
    trace.push_back({stage, rule, g.nodes[i].id, reason});
  };

  // E1 — once, in node order.
  for (std::size_t i = 0; i < n; ++i)
    if (alive[i] && isPatentlyInconsistent(g.nodes[i].formulas)) remove(i, 1, nullptr);

  // Eventualities of the tableau that remains after E1, in rendering order.
  std::vector<FormulaSet> liveSets;
  for (std::size_t i = 0; i < n; ++i)
    if (alive[i]) liveSets.push_back(g.nodes[i].formulas);
  std::vector<Formula> evs = eventualitiesOf(liveSets);

  auto e2Fixpoint = [&]() {
    bool removedAny = false;
    bool again = true;
    while (again) {
      again = false;
      for (std::size_t i = 0; i < n && !again; ++i) {
        if (!alive[i]) continue;
        for (Formula f : g.nodes[i].formulas) {
          if (!isDiamond(f)) continue;
          bool hasLive = false;
          for (const auto& me : g.markedEdges)
            if (me.from == g.nodes[i].id && me.label == f && alive[pos.at(me.to)]) {
              hasLive = true;
              break;
            }
          if (!hasLive) {
            remove(i, 2, f);
            again = true;
            removedAny = true;
            break;
          }
        }
      }
    }
    return removedAny;
  };

  if (evs.empty()) {
    e2Fixpoint();
  } else {
    bool cycleRemoved = true;
    while (cycleRemoved) {
      cycleRemoved = false;
      for (Formula xi : evs) {
        while (true) {  // E3 subpass: ranks recomputed after every removal
          auto rank = computeRanks(g, alive, xi, mode);
          std::size_t victim = OMEGA;
          for (std::size_t i = 0; i < n; ++i)
            if (alive[i] && g.nodes[i].formulas.contains(xi) && rank[i] == OMEGA) {
              victim = i;
              break;
            }
          if (victim == OMEGA) break;
          remove(victim, 3, xi);
          cycleRemoved = true;
        }
        if (e2Fixpoint()) cycleRemoved = true;
      }
    }
  }

  EliminationResult res;
  res.trace = std::move(trace);
  res.eventualities = std::move(evs);
  res.finalTableau.root = g.root;
  for (std::size_t i = 0; i < n; ++i)
    if (alive[i]) res.finalTableau.nodes.push_back(g.nodes[i]);
  for (const auto& me : g.markedEdges)
    if (alive[pos.at(me.from)] && alive[pos.at(me.to)])
      res.finalTableau.markedEdges.push_back(me);
  return res;
}

Verdict verdict(const Graph& finalTableau, Formula theta) {
  for (const auto& nd : finalTableau.nodes)
    if (nd.kind == NodeKind::State && nd.formulas.contains(theta)) return Verdict::Open;
  return Verdict::Closed;
}

std::string formatTrace(const std::vector<TraceEntry>& trace) {
  std::ostringstream o;
  for (const auto& e : trace) {
    o << "stage=" << e.stage << " rule=E" << e.rule << " node=" << e.node
      << " reason=" << (e.reason ? render(e.reason) : "-") << "\n";
  }
  return o.str();
}

namespace {
std::string dotEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}
}  // namespace

std::string exportDot(const Graph& g, Stage stage) {
  const char* name = stage == Stage::Pretableau ? "pretableau"
                     : stage == Stage::Initial  ? "initial_tableau"
                                                : "final_tableau";
  std::ostringstream o;
  o << "digraph " << name << " {\n";
  o << "  rankdir=TB;\n";
  o << "  node [shape=box, fontname=\"Helvetica\"];\n";
  for (const auto& n : g.nodes) {
    o << "  n" << n.id << " [label=\"" << dotEscape(n.formulas.renderSet()) << "\"";
    if (n.kind == NodeKind::Prestate) o << ", style=dashed";
    o << "];\n";
  }
  auto d = g.doubleEdges;
  std::sort(d.begin(), d.end(), [](const DoubleEdge& a, const DoubleEdge& b) {
    return std::tie(a.from, a.to) < std::tie(b.from, b.to);
  });
  for (const auto& e : d)
    o << "  n" << e.from << " -> n" << e.to << " [color=\"black:invis:black\"];\n";
  auto m = g.markedEdges;
  std::sort(m.begin(), m.end(), [](const MarkedEdge& a, const MarkedEdge& b) {
    return std::tie(a.from, a.label->text, a.to) < std::tie(b.from, b.label->text, b.to);
  });
  for (const auto& e : m)
    o << "  n" << e.from << " -> n" << e.to << " [label=\""
      << dotEscape(render(e.label)) << "\"];\n";
  o << "}\n";
  return o.str();
}

}  // namespace epitab
