#include "epitab/hintikka.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "epitab/expansion.hpp"

namespace epitab {

Relation transitiveClosure(Relation r, int n) {
  std::vector<std::vector<char>> m(n, std::vector<char>(n, 0));
  for (const auto& [s, t] : r) m[s][t] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (!m[i][k]) continue;
      for (int j = 0; j < n; ++j)
        if (m[k][j]) m[i][j] = 1;
    }
  Relation out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m[i][j]) out.insert({i, j});
  return out;
}

Relation rstClosure(Relation r, int n) {
  Relation s;
  for (int i = 0; i < n; ++i) s.insert({i, i});
  for (const auto& [a, b] : r) {
    s.insert({a, b});
    s.insert({b, a});
  }
  return transitiveClosure(std::move(s), n);
}

namespace {

bool edgeExists(const Graph& t, NodeId from, Formula label, NodeId to) {
  for (const auto& me : t.markedEdges)
    if (me.from == from && me.label == label && me.to == to) return true;
  return false;
}

NodeId chooseSuccessor(const Graph& t, NodeId from, Formula chi) {
  NodeId best = OMEGA;
  for (const auto& me : t.markedEdges)
    if (me.from == from && me.label == chi) best = std::min(best, me.to);
  if (best == OMEGA)
    throw std::logic_error("buildComponent(): state " + std::to_string(from) +
                           " has no successor for " + render(chi));
  return best;
}

std::vector<Formula> diamondsOf(const FormulaSet& s) {
  std::vector<Formula> out;
  for (Formula f : s)
    if (isDiamond(f)) out.push_back(f);
  return out;
}

}  // namespace

Component buildComponent(NodeId stateId, Formula eventuality, const Graph& t) {
  const Node* root = t.nodeById(stateId);
  if (!root) throw std::invalid_argument("buildComponent(): unknown state id");

  // Spine: a shortest rank-descending path to a state containing ~φ when the
  // eventuality is present, otherwise just the root.
  std::vector<NodeId> spine{stateId};
  if (eventuality && root->formulas.contains(eventuality)) {
    std::vector<char> alive(t.nodes.size(), 1);
    auto ranks = computeRanks(t, alive, eventuality, RankMode::PathMin);
    std::map<NodeId, std::size_t> pos;
    for (std::size_t i = 0; i < t.nodes.size(); ++i) pos[t.nodes[i].id] = i;
    Formula notPhi = mkNot(eventuality->left->left);
    NodeId cur = stateId;
    while (!t.nodeById(cur)->formulas.contains(notPhi)) {
      std::size_t rcur = ranks[pos.at(cur)];
      if (rcur == OMEGA || rcur == 0)
        throw std::logic_error("buildComponent(): eventuality " + render(eventuality) +
                               " is not realizable from state " + std::to_string(cur));
      NodeId next = OMEGA;
      for (const auto& me : t.markedEdges)
        if (me.from == cur && ranks[pos.at(me.to)] == rcur - 1)
          next = std::min(next, me.to);
      if (next == OMEGA)
        throw std::logic_error("buildComponent(): broken rank descent at state " +
                               std::to_string(cur));
      spine.push_back(next);
      cur = next;
    }
  }

  // For each inner spine step, the diamond the step edge serves (smallest in
  // rendering order among those with an edge to the next spine state).
  std::vector<Formula> stepVia(spine.size(), nullptr);
  for (std::size_t i = 1; i < spine.size(); ++i) {
    for (Formula f : diamondsOf(t.nodeById(spine[i - 1])->formulas)) {
      if (edgeExists(t, spine[i - 1], f, spine[i])) {
        stepVia[i] = f;
        break;
      }
    }
    if (!stepVia[i])
      throw std::logic_error("buildComponent(): spine step has no witnessing diamond");
  }

  Component comp;
  auto addNode = [&](NodeId st, int parent, Formula via, bool leaf) {
    ComponentNode cn;
    cn.state = st;
    cn.parent = parent;
    cn.relType = 0;
    cn.leaf = leaf;
    if (via) {
      if (isDiamondK(via)) {
        cn.relType = 'K';
        cn.agent = via->left->name;
      } else {
        cn.relType = 'D';
      }
    }
    comp.nodes.push_back(std::move(cn));
    return static_cast<int>(comp.nodes.size()) - 1;
  };

  // Spine nodes first (positions 0..k), then leaves in (spine, diamond) order.
  for (std::size_t i = 0; i < spine.size(); ++i)
    addNode(spine[i], i == 0 ? -1 : static_cast<int>(i) - 1, i == 0 ? nullptr : stepVia[i],
            false);
  for (std::size_t i = 0; i < spine.size(); ++i) {
    bool hasStep = i + 1 < spine.size();
    for (Formula f : diamondsOf(t.nodeById(spine[i])->formulas)) {
      if (hasStep && f == stepVia[i + 1]) continue;  // served by the spine edge
      addNode(chooseSuccessor(t, spine[i], f), static_cast<int>(i), f, true);
    }
  }
  return comp;
}

Maehs stitchHintikka(const Graph& t, Formula theta, const AgentSet& agents) {
  std::vector<NodeId> states;
  std::vector<FormulaSet> sets;
  for (const auto& n : t.nodes) {
    states.push_back(n.id);
    sets.push_back(n.formulas);
  }
  std::map<NodeId, int> colOf;
  for (std::size_t i = 0; i < states.size(); ++i) colOf[states[i]] = static_cast<int>(i);

  std::vector<Formula> evs = eventualitiesOf(sets);
  const int m = static_cast<int>(evs.size());

  int q = -1;
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (sets[i].contains(theta)) {
      q = static_cast<int>(i);
      break;
    }
  if (q < 0) throw std::invalid_argument("stitchHintikka(): the tableau is not open");

  int p = 0;
  if (isEventuality(theta))
    for (int i = 0; i < m; ++i)
      if (evs[i] == theta) {
        p = i;
        break;
      }

  struct WorldRec {
    NodeId state;
    bool alive;
  };
  std::vector<WorldRec> worlds;
  std::vector<std::tuple<int, int, char, std::string>> edges;  // from, to, type, agent
  std::map<std::pair<int, int>, int> instanceRoot;             // (row, col) -> world

  auto instantiate = [&](int row, NodeId stateId, int attachWorld) {
    Formula ev = (m == 0) ? nullptr : evs[row];
    Component comp = buildComponent(stateId, ev, t);
    std::vector<int> ids(comp.nodes.size());
    std::vector<int> newLeaves;
    for (std::size_t k = 0; k < comp.nodes.size(); ++k) {
      const auto& cn = comp.nodes[k];
      if (k == 0 && attachWorld >= 0) {
        ids[0] = attachWorld;  // the leaf becomes this component's root
      } else {
        ids[k] = static_cast<int>(worlds.size());
        worlds.push_back({cn.state, true});
        if (cn.leaf) newLeaves.push_back(ids[k]);
      }
      if (cn.parent >= 0) edges.emplace_back(ids[cn.parent], ids[k], cn.relType, cn.agent);
    }
    instanceRoot[{row, colOf.at(stateId)}] = ids[0];
    return newLeaves;
  };

  int startRow = (m == 0) ? 0 : p;
  std::vector<int> frontier = instantiate(startRow, states[q], -1);
  int currentRow = startRow;
  while (!frontier.empty()) {
    int nextRow = (m == 0) ? 0 : (currentRow + 1) % m;
    std::vector<int> nextFrontier;
    for (int w : frontier) {
      if (!worlds[w].alive) continue;
      NodeId st = worlds[w].state;
      auto key = std::make_pair(nextRow, colOf.at(st));
      auto it = instanceRoot.find(key);
      if (it != instanceRoot.end()) {
        // Reuse the existing instance: repoint every edge into w at its root.
        for (auto& e : edges)
          if (std::get<1>(e) == w) std::get<1>(e) = it->second;
        worlds[w].alive = false;
      } else {
        auto lv = instantiate(nextRow, st, w);
        nextFrontier.insert(nextFrontier.end(), lv.begin(), lv.end());
      }
    }
    frontier = std::move(nextFrontier);
    currentRow = nextRow;
  }

  // Compact world ids and assemble the structure.
  std::vector<int> remap(worlds.size(), -1);
  int nw = 0;
  for (std::size_t i = 0; i < worlds.size(); ++i)
    if (worlds[i].alive) remap[i] = nw++;

  Maehs hs;
  hs.agents = agents;
  hs.worldCount = nw;
  for (const auto& a : agents) hs.ra[a] = {};
  hs.labels.resize(nw);
  hs.sourceState.resize(nw);
  for (std::size_t i = 0; i < worlds.size(); ++i) {
    if (!worlds[i].alive) continue;
    hs.labels[remap[i]] = t.nodeById(worlds[i].state)->formulas;
    hs.sourceState[remap[i]] = worlds[i].state;
  }
  for (const auto& [from, to, type, agent] : edges) {
    if (!worlds[from].alive || !worlds[to].alive) continue;
    WorldPair pr{remap[from], remap[to]};
    if (type == 'K')
      hs.ra[agent].insert(pr);
    else
      hs.rd.insert(pr);
  }
  Relation uni = hs.rd;
  for (const auto& [a, r] : hs.ra) uni.insert(r.begin(), r.end());
  hs.rc = transitiveClosure(std::move(uni), nw);
  hs.designated = remap[0];
  return hs;
}

namespace {
std::string wn(int i) { return "s" + std::to_string(i); }
}  // namespace

std::vector<std::string> validateHintikka(const Maehs& hs) {
  std::vector<std::string> rep;
  const int n = hs.worldCount;
  if (static_cast<int>(hs.labels.size()) != n) {
    rep.push_back("label count does not match world count");
    return rep;
  }

  Relation uni = hs.rd;
  for (const auto& [a, r] : hs.ra) uni.insert(r.begin(), r.end());
  if (transitiveClosure(uni, n) != hs.rc)
    rep.push_back("R_C is not the transitive closure of R_D and the agent relations");

  for (int s = 0; s < n; ++s) {
    const FormulaSet& H = hs.labels[s];
    for (Formula f : H) {
      if (f->kind == Kind::Not && H.contains(f->left))
        rep.push_back("H1 violated at " + wn(s) + ": both " + render(f->left) + " and " +
                      render(f));
    }
    if (!isFullyExpanded(H, hs.agents))
      rep.push_back("H2 violated at " + wn(s) + ": label is not fully expanded");
    for (Formula f : H) {
      if (isDiamondK(f)) {
        const std::string& a = f->left->name;
        Formula notPhi = mkNot(f->left->left);
        bool found = false;
        auto it = hs.ra.find(a);
        if (it != hs.ra.end())
          for (const auto& [u, v] : it->second)
            if (u == s && hs.labels[v].contains(notPhi)) {
              found = true;
              break;
            }
        if (!found)
          rep.push_back("H4 violated at " + wn(s) + ": " + render(f) +
                        " has no R_" + a + "-successor containing " + render(notPhi));
      } else if (isDiamondD(f)) {
        Formula notPhi = mkNot(f->left->left);
        bool found = false;
        for (const auto& [u, v] : hs.rd)
          if (u == s && hs.labels[v].contains(notPhi)) {
            found = true;
            break;
          }
        if (!found)
          rep.push_back("H7 violated at " + wn(s) + ": " + render(f) +
                        " has no R_D-successor containing " + render(notPhi));
      } else if (isEventuality(f)) {
        Formula notPhi = mkNot(f->left->left);
        bool found = false;
        for (const auto& [u, v] : hs.rc)
          if (u == s && hs.labels[v].contains(notPhi)) {
            found = true;
            break;
          }
        if (!found)
          rep.push_back("H9 violated at " + wn(s) + ": " + render(f) +
                        " has no R_C-successor containing " + render(notPhi));
      }
    }
  }

  for (const auto& [a, r] : hs.ra) {
    for (const auto& [s, t] : r) {
      for (Formula f : hs.labels[s]) {
        if (f->kind == Kind::Knows && f->name == a) {
          if (!hs.labels[t].contains(f->left))
            rep.push_back("H3 violated on (" + wn(s) + "," + wn(t) + ") in R_" + a + ": " +
                          render(f->left) + " missing at " + wn(t));
          if (!hs.labels[t].contains(f))
            rep.push_back("H5 violated on (" + wn(s) + "," + wn(t) + ") in R_" + a + ": " +
                          render(f) + " missing at " + wn(t));
        }
      }
      for (Formula f : hs.labels[t])
        if (f->kind == Kind::Knows && f->name == a && !hs.labels[s].contains(f))
          rep.push_back("H5 violated on (" + wn(s) + "," + wn(t) + ") in R_" + a + ": " +
                        render(f) + " missing at " + wn(s));
    }
  }

  for (const auto& [s, t] : hs.rd) {
    for (Formula f : hs.labels[s]) {
      if (f->kind == Kind::Dist) {
        if (!hs.labels[t].contains(f->left))
          rep.push_back("H6 violated on (" + wn(s) + "," + wn(t) + ") in R_D: " +
                        render(f->left) + " missing at " + wn(t));
        if (!hs.labels[t].contains(f))
          rep.push_back("H8 violated on (" + wn(s) + "," + wn(t) + ") in R_D: " + render(f) +
                        " missing at " + wn(t));
      }
      if (f->kind == Kind::Knows && !hs.labels[t].contains(f))
        rep.push_back("H8 violated on (" + wn(s) + "," + wn(t) + ") in R_D: " + render(f) +
                      " missing at " + wn(t));
    }
    for (Formula f : hs.labels[t])
      if ((f->kind == Kind::Dist || f->kind == Kind::Knows) && !hs.labels[s].contains(f))
        rep.push_back("H8 violated on (" + wn(s) + "," + wn(t) + ") in R_D: " + render(f) +
                      " missing at " + wn(s));
  }

  return rep;
}

std::vector<std::string> validateHintikka(const Maehs& hs, Formula theta) {
  auto rep = validateHintikka(hs);
  bool found = false;
  for (const auto& H : hs.labels)
    if (H.contains(theta)) {
      found = true;
      break;
    }
  if (!found) rep.push_back("no world is labelled with " + render(theta));
  return rep;
}

}  // namespace epitab
