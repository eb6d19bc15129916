#include "epitab/model.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

#include <json.hpp>

namespace epitab {

namespace {

bool eval(const PseudoModel& m, int w, Formula f);

std::set<int> reachableWorlds(const PseudoModel& m, int from) {
  std::set<int> seen{from};
  std::vector<int> stack{from};
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (const auto& [a, r] : m.ra)
      for (int t = 0; t < m.worldCount; ++t)
        if (r.count({s, t}) && seen.insert(t).second) stack.push_back(t);
  }
  return seen;
}

bool eval(const PseudoModel& m, int w, Formula f) {
  switch (f->kind) {
    case Kind::Atom:
      return m.val[w].count(f->name) > 0;
    case Kind::Not:
      return !eval(m, w, f->left);
    case Kind::And:
      return eval(m, w, f->left) && eval(m, w, f->right);
    case Kind::Knows: {
      auto it = m.ra.find(f->name);
      if (it == m.ra.end())
        throw std::invalid_argument("satisfies(): unknown agent \"" + f->name + "\" in \"" +
                                    render(f) + "\"");
      for (int t = 0; t < m.worldCount; ++t)
        if (it->second.count({w, t}) && !eval(m, t, f->left)) return false;
      return true;
    }
    case Kind::Dist:
      for (int t = 0; t < m.worldCount; ++t)
        if (m.rd.count({w, t}) && !eval(m, t, f->left)) return false;
      return true;
    case Kind::Common: {
      auto [rel, reach] = commonBothWays(m, w, f);
      if (rel != reach)
        throw std::logic_error("satisfies(): relational and reachability evaluations of \"" +
                               render(f) + "\" disagree at world " + std::to_string(w));
      return rel;
    }
  }
  return false;  // unreachable
}

Relation agentIntersection(const std::map<std::string, Relation>& ra, const AgentSet& agents) {
  Relation inter;
  bool first = true;
  for (const auto& a : agents) {
    auto it = ra.find(a);
    Relation r = (it == ra.end()) ? Relation{} : it->second;
    if (first) {
      inter = std::move(r);
      first = false;
    } else {
      Relation nxt;
      std::set_intersection(inter.begin(), inter.end(), r.begin(), r.end(),
                            std::inserter(nxt, nxt.begin()));
      inter = std::move(nxt);
    }
  }
  return inter;
}

}  // namespace

std::pair<bool, bool> commonBothWays(const PseudoModel& m, int world, Formula f) {
  if (f->kind != Kind::Common)
    throw std::invalid_argument("commonBothWays(): not a C-formula: \"" + render(f) + "\"");
  if (world < 0 || world >= m.worldCount)
    throw std::invalid_argument("commonBothWays(): unknown world index " +
                                std::to_string(world));
  bool viaRc = true;
  for (int t = 0; t < m.worldCount && viaRc; ++t)
    if (m.rc.count({world, t}) && !eval(m, t, f->left)) viaRc = false;
  bool viaReach = true;
  for (int t : reachableWorlds(m, world))
    if (!eval(m, t, f->left)) {
      viaReach = false;
      break;
    }
  return {viaRc, viaReach};
}

bool satisfies(const PseudoModel& m, int world, Formula f) {
  if (world < 0 || world >= m.worldCount)
    throw std::invalid_argument("satisfies(): unknown world index " + std::to_string(world));
  return eval(m, world, f);
}

bool isGenuineFrame(const PseudoModel& m) {
  return agentIntersection(m.ra, m.agents) == m.rd;
}

std::vector<std::string> checkFrameConditions(const PseudoModel& m) {
  std::vector<std::string> rep;
  const int n = m.worldCount;
  auto name = [&](int i) {
    return (i >= 0 && i < static_cast<int>(m.stateNames.size())) ? m.stateNames[i]
                                                                 : std::to_string(i);
  };

  if (static_cast<int>(m.stateNames.size()) != n)
    rep.push_back("state name count differs from world count");
  if (static_cast<int>(m.val.size()) != n)
    rep.push_back("valuation row count differs from world count");

  auto checkEquiv = [&](const Relation& r, const std::string& rel) {
    for (int i = 0; i < n; ++i)
      if (!r.count({i, i})) rep.push_back(rel + " is not reflexive at " + name(i));
    for (const auto& [s, t] : r) {
      if (s < 0 || s >= n || t < 0 || t >= n) {
        rep.push_back(rel + " refers to an unknown world");
        continue;
      }
      if (!r.count({t, s}))
        rep.push_back(rel + " is not symmetric on (" + name(s) + "," + name(t) + ")");
      for (int u = 0; u < n; ++u)
        if (r.count({t, u}) && !r.count({s, u}))
          rep.push_back(rel + " is not transitive via (" + name(s) + "," + name(t) + "," +
                        name(u) + ")");
    }
  };

  for (const auto& a : m.agents) {
    auto it = m.ra.find(a);
    if (it == m.ra.end())
      rep.push_back("missing relation for agent " + a);
    else
      checkEquiv(it->second, "R_" + a);
  }
  for (const auto& [a, r] : m.ra)
    if (!m.agents.contains(a)) rep.push_back("relation for unknown agent " + a);
  checkEquiv(m.rd, "R_D");

  for (const auto& [s, t] : m.rd)
    for (const auto& a : m.agents) {
      auto it = m.ra.find(a);
      if (it != m.ra.end() && !it->second.count({s, t}))
        rep.push_back("R_D pair (" + name(s) + "," + name(t) + ") is missing from R_" + a);
    }

  Relation uni;
  for (const auto& [a, r] : m.ra) uni.insert(r.begin(), r.end());
  if (transitiveClosure(std::move(uni), n) != m.rc)
    rep.push_back("R_C is not the transitive closure of the union of the agent relations");

  if (m.genuine != isGenuineFrame(m))
    rep.push_back(std::string("genuine flag is ") + (m.genuine ? "true" : "false") +
                  " but the relations say otherwise");
  return rep;
}

std::vector<std::string> truthLemmaReport(const PseudoModel& m) {
  std::vector<std::string> rep;
  for (int s = 0; s < static_cast<int>(m.labels.size()); ++s)
    for (Formula f : m.labels[s])
      if (!satisfies(m, s, f))
        rep.push_back("truth lemma fails at " + m.stateNames[s] + ": \"" + render(f) +
                      "\" evaluates false");
  return rep;
}

PseudoModel pseudoModelFromHintikka(const Maehs& hs) {
  auto bad = validateHintikka(hs);
  if (!bad.empty())
    throw std::invalid_argument("pseudoModelFromHintikka(): structure fails validation: " +
                                bad.front());
  if (hs.worldCount <= 0)
    throw std::invalid_argument("pseudoModelFromHintikka(): structure has no worlds");

  const int n = hs.worldCount;
  PseudoModel m;
  m.agents = hs.agents;
  m.worldCount = n;
  for (int i = 0; i < n; ++i) m.stateNames.push_back("w" + std::to_string(i));

  for (const auto& a : hs.agents) {
    Relation r;
    auto it = hs.ra.find(a);
    if (it != hs.ra.end()) r = it->second;
    r.insert(hs.rd.begin(), hs.rd.end());
    m.ra[a] = rstClosure(std::move(r), n);
  }
  m.rd = rstClosure(hs.rd, n);
  Relation uni;
  for (const auto& [a, r] : m.ra) uni.insert(r.begin(), r.end());
  m.rc = transitiveClosure(std::move(uni), n);

  std::set<std::string> atomSet;
  for (const auto& H : hs.labels)
    for (Formula f : H)
      if (isAtom(f)) atomSet.insert(f->name);
  m.atoms.assign(atomSet.begin(), atomSet.end());
  m.val.resize(n);
  for (int s = 0; s < n; ++s)
    for (Formula f : hs.labels[s])
      if (isAtom(f)) m.val[s].insert(f->name);

  m.genuine = isGenuineFrame(m);
  m.labels = hs.labels;

  auto tl = truthLemmaReport(m);
  if (!tl.empty()) throw std::logic_error("pseudoModelFromHintikka(): " + tl.front());
  return m;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

// All restricted-growth strings of the given length, in lexicographic order;
// each one encodes a set partition (worlds i, j in the same block iff equal).
std::vector<std::vector<int>> partitionsOf(int n) {
  std::vector<std::vector<int>> out;
  if (n < 1) return out;
  std::vector<int> a(n, 0);
  auto rec = [&](auto&& self, int i, int mx) -> void {
    if (i == n) {
      out.push_back(a);
      return;
    }
    for (int v = 0; v <= mx + 1; ++v) {
      a[i] = v;
      self(self, i + 1, std::max(mx, v));
    }
  };
  rec(rec, 1, 0);  // a[0] is fixed at 0
  return out;
}

Relation partitionRelation(const std::vector<int>& rgs) {
  Relation r;
  const int n = static_cast<int>(rgs.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rgs[i] == rgs[j]) r.insert({i, j});
  return r;
}

}  // namespace

bool enumerateModelsOfSize(int worlds, const AgentSet& agents,
                           const std::vector<std::string>& atoms,
                           const std::function<bool(const PseudoModel&)>& fn) {
  if (worlds < 1)
    throw std::invalid_argument("enumerateModelsOfSize(): world count must be at least 1");
  if (agents.empty())
    throw std::invalid_argument("enumerateModelsOfSize(): agent set is empty");
  std::vector<std::string> ats = atoms;
  std::sort(ats.begin(), ats.end());
  ats.erase(std::unique(ats.begin(), ats.end()), ats.end());
  if (ats.size() > 2)
    throw std::invalid_argument("enumerateModelsOfSize(): at most 2 atoms supported");

  const auto parts = partitionsOf(worlds);
  const int na = static_cast<int>(agents.size());
  const int numAtoms = static_cast<int>(ats.size());
  const unsigned long maskEnd = 1UL << (worlds * numAtoms);

  std::vector<std::string> names;
  for (int i = 0; i < worlds; ++i) names.push_back("w" + std::to_string(i));

  std::vector<std::size_t> idx(na, 0);  // odometer, first agent most significant
  while (true) {
    std::map<std::string, Relation> ra;
    {
      int k = 0;
      for (const auto& a : agents) ra[a] = partitionRelation(parts[idx[k++]]);
    }
    Relation rd = agentIntersection(ra, agents);
    Relation uni;
    for (const auto& [a, r] : ra) uni.insert(r.begin(), r.end());
    Relation rc = transitiveClosure(std::move(uni), worlds);

    for (unsigned long mask = 0; mask < maskEnd; ++mask) {
      PseudoModel m;
      m.agents = agents;
      m.worldCount = worlds;
      m.stateNames = names;
      m.ra = ra;
      m.rd = rd;
      m.rc = rc;
      m.atoms = ats;
      m.val.resize(worlds);
      for (int w = 0; w < worlds; ++w)
        for (int ai = 0; ai < numAtoms; ++ai)
          if (mask & (1UL << (w * numAtoms + ai))) m.val[w].insert(ats[ai]);
      m.genuine = true;  // R_D is the intersection by construction
      if (!fn(m)) return false;
    }

    int pos = na - 1;
    while (pos >= 0 && ++idx[pos] == parts.size()) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return true;
}

bool enumerateModels(const AgentSet& agents, const std::vector<std::string>& atoms,
                     int maxStates, const std::function<bool(const PseudoModel&)>& fn) {
  if (maxStates < 1)
    throw std::invalid_argument("enumerateModels(): maxStates must be at least 1");
  for (int k = 1; k <= maxStates; ++k)
    if (!enumerateModelsOfSize(k, agents, atoms, fn)) return false;
  return true;
}

OracleResult bruteForceSat(Formula phi, const AgentSet& agents, int maxStates) {
  if (maxStates < 1)
    throw std::invalid_argument("bruteForceSat(): maxStates must be at least 1");
  auto ats = atomsIn(phi);
  if (ats.size() > 2)
    throw std::invalid_argument("bruteForceSat(): \"" + render(phi) +
                                "\" uses more than 2 atoms");
  OracleResult res;
  res.bound = maxStates;
  for (int k = 1; k <= maxStates && !res.found; ++k) {
    enumerateModelsOfSize(k, agents, ats, [&](const PseudoModel& m) {
      for (int w = 0; w < m.worldCount; ++w)
        if (satisfies(m, w, phi)) {
          res.found = true;
          res.model = m;
          res.world = w;
          res.size = k;
          return false;
        }
      return true;
    });
  }
  return res;
}

// ---------------------------------------------------------------------------
// JSON I/O

namespace {

using ojson = nlohmann::ordered_json;
using ujson = nlohmann::json;

ojson pairList(const Relation& r, const std::vector<std::string>& names) {
  std::set<WorldPair> canon;
  for (const auto& [s, t] : r) {
    if (s == t) continue;  // reflexive pairs are implied
    canon.insert({std::min(s, t), std::max(s, t)});
  }
  ojson arr = ojson::array();
  for (const auto& [s, t] : canon) arr.push_back(ojson::array({names[s], names[t]}));
  return arr;
}

[[noreturn]] void loadFail(const std::string& msg) {
  throw std::runtime_error("modelFromJson(): " + msg);
}

}  // namespace

std::string modelToJson(const PseudoModel& m, bool includeLabels) {
  ojson j;
  j["agents"] = m.agents.names();
  j["states"] = m.stateNames;
  j["atoms"] = m.atoms;
  ojson valj = ojson::object();
  for (int s = 0; s < m.worldCount; ++s) {
    ojson arr = ojson::array();
    for (const auto& a : m.atoms)
      if (m.val[s].count(a)) arr.push_back(a);
    valj[m.stateNames[s]] = arr;
  }
  j["valuation"] = valj;
  ojson rel = ojson::object();
  for (const auto& a : m.agents) {
    auto it = m.ra.find(a);
    rel[a] = pairList(it == m.ra.end() ? Relation{} : it->second, m.stateNames);
  }
  j["relations"] = rel;
  j["rd"] = pairList(m.rd, m.stateNames);
  j["genuine"] = m.genuine;
  if (includeLabels && !m.labels.empty()) {
    ojson lab = ojson::object();
    for (int s = 0; s < m.worldCount; ++s) {
      ojson arr = ojson::array();
      for (Formula f : m.labels[s]) arr.push_back(render(f));
      lab[m.stateNames[s]] = arr;
    }
    j["labels"] = lab;
  }
  return j.dump(2) + "\n";
}

PseudoModel modelFromJson(const std::string& text) {
  ujson j;
  try {
    j = ujson::parse(text);
  } catch (const ujson::parse_error& e) {
    loadFail(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) loadFail("top level is not an object");
  for (const char* field : {"agents", "states", "atoms", "valuation", "relations", "rd",
                            "genuine"})
    if (!j.contains(field)) loadFail(std::string("missing field \"") + field + "\"");

  const ujson& ja = j.at("agents");
  if (!ja.is_array() || ja.empty()) loadFail("\"agents\" must be a non-empty array");
  std::vector<std::string> agentNames;
  for (const auto& x : ja) {
    if (!x.is_string()) loadFail("\"agents\" entries must be strings");
    agentNames.push_back(x.get<std::string>());
  }
  AgentSet agents(agentNames);

  const ujson& js = j.at("states");
  if (!js.is_array() || js.empty()) loadFail("\"states\" must be a non-empty array");
  std::vector<std::string> names;
  std::map<std::string, int> indexOf;
  for (const auto& x : js) {
    if (!x.is_string() || x.get<std::string>().empty())
      loadFail("\"states\" entries must be non-empty strings");
    std::string s = x.get<std::string>();
    if (indexOf.count(s)) loadFail("duplicate state \"" + s + "\"");
    indexOf[s] = static_cast<int>(names.size());
    names.push_back(s);
  }
  const int n = static_cast<int>(names.size());

  const ujson& jat = j.at("atoms");
  if (!jat.is_array()) loadFail("\"atoms\" must be an array");
  std::vector<std::string> atoms;
  for (const auto& x : jat) {
    if (!x.is_string() || !isIdentifier(x.get<std::string>()))
      loadFail("\"atoms\" entries must be identifiers");
    std::string a = x.get<std::string>();
    if (std::find(atoms.begin(), atoms.end(), a) != atoms.end())
      loadFail("duplicate atom \"" + a + "\"");
    atoms.push_back(a);
  }

  auto stateIndex = [&](const ujson& x, const char* where) {
    if (!x.is_string()) loadFail(std::string(where) + " must name a state");
    auto it = indexOf.find(x.get<std::string>());
    if (it == indexOf.end())
      loadFail(std::string("unknown state \"") + x.get<std::string>() + "\" in " + where);
    return it->second;
  };

  PseudoModel m;
  m.agents = agents;
  m.worldCount = n;
  m.stateNames = names;
  m.atoms = atoms;
  m.val.resize(n);

  const ujson& jv = j.at("valuation");
  if (!jv.is_object()) loadFail("\"valuation\" must be an object");
  for (const auto& [key, arr] : jv.items()) {
    int s = stateIndex(ujson(key), "\"valuation\"");
    if (!arr.is_array()) loadFail("valuation of \"" + key + "\" must be an array");
    for (const auto& x : arr) {
      if (!x.is_string()) loadFail("valuation of \"" + key + "\" must list atoms");
      std::string a = x.get<std::string>();
      if (std::find(atoms.begin(), atoms.end(), a) == atoms.end())
        loadFail("valuation of \"" + key + "\" uses unknown atom \"" + a + "\"");
      m.val[s].insert(a);
    }
  }

  auto readPairs = [&](const ujson& arr, const std::string& where) {
    if (!arr.is_array()) loadFail("\"" + where + "\" must be an array of pairs");
    Relation r;
    for (const auto& pr : arr) {
      if (!pr.is_array() || pr.size() != 2)
        loadFail("\"" + where + "\" entries must be two-element arrays");
      int s = stateIndex(pr[0], where.c_str());
      int t = stateIndex(pr[1], where.c_str());
      r.insert({s, t});
    }
    return r;
  };

  const ujson& jr = j.at("relations");
  if (!jr.is_object()) loadFail("\"relations\" must be an object");
  for (const auto& [key, arr] : jr.items()) {
    if (!agents.contains(key)) loadFail("relation for unknown agent \"" + key + "\"");
    (void)arr;
  }
  for (const auto& a : agents) {
    Relation raw = jr.contains(a) ? readPairs(jr.at(a), "relations." + a) : Relation{};
    m.ra[a] = rstClosure(std::move(raw), n);
  }
  m.rd = rstClosure(readPairs(j.at("rd"), "rd"), n);

  Relation uni;
  for (const auto& [a, r] : m.ra) uni.insert(r.begin(), r.end());
  m.rc = transitiveClosure(std::move(uni), n);

  if (!j.at("genuine").is_boolean()) loadFail("\"genuine\" must be a boolean");
  m.genuine = j.at("genuine").get<bool>();

  if (j.contains("labels")) {
    const ujson& jl = j.at("labels");
    if (!jl.is_object()) loadFail("\"labels\" must be an object");
    m.labels.resize(n);
    for (const auto& [key, arr] : jl.items()) {
      int s = stateIndex(ujson(key), "\"labels\"");
      if (!arr.is_array()) loadFail("labels of \"" + key + "\" must be an array");
      for (const auto& x : arr) {
        if (!x.is_string()) loadFail("labels of \"" + key + "\" must list formulas");
        m.labels[s].insert(parse(x.get<std::string>(), agents));
      }
    }
  }

  auto rep = checkFrameConditions(m);
  if (!rep.empty()) loadFail(rep.front());
  return m;
}

std::string maehsToJson(const Maehs& hs) {
  const int n = hs.worldCount;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("w" + std::to_string(i));

  std::set<std::string> atomSet;
  for (const auto& H : hs.labels)
    for (Formula f : H)
      if (isAtom(f)) atomSet.insert(f->name);

  ojson j;
  j["agents"] = hs.agents.names();
  j["states"] = names;
  j["atoms"] = std::vector<std::string>(atomSet.begin(), atomSet.end());
  ojson valj = ojson::object();
  for (int s = 0; s < n; ++s) {
    ojson arr = ojson::array();
    for (const auto& a : atomSet)
      if (hs.labels[s].contains(atom(a))) arr.push_back(a);
    valj[names[s]] = arr;
  }
  j["valuation"] = valj;
  ojson rel = ojson::object();
  for (const auto& a : hs.agents) {
    auto it = hs.ra.find(a);
    rel[a] = pairList(it == hs.ra.end() ? Relation{} : it->second, names);
  }
  j["relations"] = rel;
  j["rd"] = pairList(hs.rd, names);
  j["genuine"] = (agentIntersection(hs.ra, hs.agents) == hs.rd);
  ojson lab = ojson::object();
  for (int s = 0; s < n; ++s) {
    ojson arr = ojson::array();
    for (Formula f : hs.labels[s]) arr.push_back(render(f));
    lab[names[s]] = arr;
  }
  j["labels"] = lab;
  return j.dump(2) + "\n";
}

}  // namespace epitab
