// Command-line front end: `sat` (decision procedure + artifacts), `check`
// (model checker over JSON models), `oracle` (brute-force bounded search).
// Exit codes: 0 = SAT / true / witness found, 1 = UNSAT / false / no witness
// within bound, 2 = usage, parse, or I/O errors.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "epitab/model.hpp"
#include "epitab/solver.hpp"

using namespace epitab;

namespace {

void writeFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open \"" + path + "\" for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("failed while writing \"" + path + "\"");
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open \"" + path + "\" for reading");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AgentSet resolveAgents(Formula f, const std::string& csv) {
  if (!csv.empty()) return AgentSet::fromCsv(csv);
  AgentSet fromFormula{agentsIn(f)};
  if (fromFormula.size() < 2)
    throw std::runtime_error("the formula mentions " + std::to_string(fromFormula.size()) +
                             " agent(s); at least 2 are required - pass --agents "
                             "(e.g. --agents a,b)");
  return fromFormula;
}

int runSat(const std::string& text, const std::string& agentsCsv, bool strictRank,
           const std::string& dotPre, const std::string& dotInit, const std::string& dotFin,
           const std::string& witnessPath, const std::string& tracePath) {
  Formula f = parse(text);
  AgentSet agents = resolveAgents(f, agentsCsv);
  if (!agentsCsv.empty()) f = parse(text, agents);

  SolveOptions opts;
  opts.strictRank = strictRank;
  SolveResult r = solve(f, agents, opts);

  std::cout << "formula: " << render(f) << "\n";
  std::cout << "agents: " << agents.csv() << "\n";
  std::cout << "cl size: " << r.clSize << "\n";
  std::cout << "ecl size: " << r.eclSize << "\n";
  std::cout << "pretableau: " << r.pretableau.prestateCount() << " prestates, "
            << r.pretableau.stateCount() << " states\n";
  std::cout << "initial tableau: " << r.initialTableau.stateCount() << " states\n";
  std::size_t e1 = 0, e2 = 0, e3 = 0;
  for (const auto& t : r.trace) (t.rule == 1 ? e1 : t.rule == 2 ? e2 : e3)++;
  std::cout << "eliminated: " << r.trace.size() << " states (E1 " << e1 << ", E2 " << e2
            << ", E3 " << e3 << ")\n";
  std::cout << "final tableau: " << r.finalTableau.stateCount() << " states\n";

  if (!dotPre.empty()) writeFile(dotPre, exportDot(r.pretableau, Stage::Pretableau));
  if (!dotInit.empty()) writeFile(dotInit, exportDot(r.initialTableau, Stage::Initial));
  if (!dotFin.empty()) writeFile(dotFin, exportDot(r.finalTableau, Stage::Final));
  if (!tracePath.empty()) writeFile(tracePath, formatTrace(r.trace));

  if (r.verdict == Verdict::Closed) {
    std::cout << "verdict: UNSAT\n";
    return 1;
  }
  if (!r.haveWitness)
    throw std::logic_error("open tableau without a usable witness: " + r.extractionError);

  std::cout << "verdict: SAT\n";
  std::cout << "witness: " << r.witness.worldCount << " worlds, designated "
            << r.witness.stateNames[r.designatedWorld]
            << ", genuine=" << (r.witness.genuine ? "true" : "false") << "\n";
  if (!witnessPath.empty()) {
    std::string json = modelToJson(r.witness, true);
    PseudoModel back = modelFromJson(json);  // round-trip before trusting the file
    if (!satisfies(back, r.designatedWorld, f))
      throw std::logic_error("serialized witness failed the re-check");
    writeFile(witnessPath, json);
  }
  return 0;
}

int runCheck(const std::string& text, const std::string& agentsCsv,
             const std::string& modelPath, const std::string& stateName) {
  PseudoModel m = modelFromJson(readFile(modelPath));
  if (!agentsCsv.empty()) {
    AgentSet given = AgentSet::fromCsv(agentsCsv);
    if (!(given == m.agents))
      throw std::runtime_error("--agents \"" + given.csv() +
                               "\" does not match the model's agents \"" + m.agents.csv() +
                               "\"");
  }
  Formula f = parse(text, m.agents);
  int world = -1;
  for (std::size_t i = 0; i < m.stateNames.size(); ++i)
    if (m.stateNames[i] == stateName) {
      world = static_cast<int>(i);
      break;
    }
  if (world < 0)
    throw std::runtime_error("unknown state \"" + stateName + "\" in \"" + modelPath + "\"");

  std::cout << "frame: ok (" << (m.genuine ? "genuine" : "pseudo") << ")\n";
  bool v = satisfies(m, world, f);
  std::cout << "result: " << (v ? "true" : "false") << "\n";
  return v ? 0 : 1;
}

int runOracle(const std::string& text, const std::string& agentsCsv, int maxStates) {
  Formula f = parse(text);
  AgentSet agents = resolveAgents(f, agentsCsv);
  if (!agentsCsv.empty()) f = parse(text, agents);
  if (agents.size() < 2)
    throw std::runtime_error("at least 2 agents required, got \"" + agents.csv() + "\"");

  OracleResult res = bruteForceSat(f, agents, maxStates);
  if (res.found) {
    if (res.size > 1)
      std::cout << "oracle: no witness at <= " << res.size - 1 << " states\n";
    std::cout << "oracle: witness at " << res.size << " states, world "
              << res.model.stateNames[res.world] << "\n";
    std::cout << modelToJson(res.model, false);
    return 0;
  }
  std::cout << "oracle: no witness at <= " << res.bound
            << " states (not an unsatisfiability verdict)\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Tableau-based satisfiability, model checking, and a brute-force oracle for "
      "multi-agent epistemic logic with common and distributed knowledge"};
  app.require_subcommand(1);

  std::string satFormula, satAgents;
  std::string dotPre, dotInit, dotFin, witnessPath, tracePath;
  bool strictRank = false;
  auto* satCmd = app.add_subcommand("sat", "Decide satisfiability of a formula");
  satCmd->add_option("formula", satFormula, "Formula to decide")->required();
  satCmd->add_option("--agents", satAgents,
                     "Comma-separated agent set (default: agents of the formula)");
  satCmd->add_flag("--strict-rank", strictRank,
                   "Rank eventualities by the strict 1+max recurrence");
  satCmd->add_option("--dot-pretableau", dotPre, "Write the pretableau as DOT");
  satCmd->add_option("--dot-initial", dotInit, "Write the initial tableau as DOT");
  satCmd->add_option("--dot-final", dotFin, "Write the final tableau as DOT");
  satCmd->add_option("--witness", witnessPath, "Write the witness pseudo-model as JSON");
  satCmd->add_option("--trace", tracePath, "Write the state-elimination trace");

  std::string checkFormula, checkAgents, modelPath, stateName;
  auto* checkCmd = app.add_subcommand("check", "Evaluate a formula in a JSON model");
  checkCmd->add_option("formula", checkFormula, "Formula to evaluate")->required();
  checkCmd->add_option("--model", modelPath, "Model file (JSON)")->required();
  checkCmd->add_option("--state", stateName, "State to evaluate at")->required();
  checkCmd->add_option("--agents", checkAgents,
                       "Expected agent set (must match the model's)");

  std::string oracleFormula, oracleAgents;
  int maxStates = 4;
  auto* oracleCmd =
      app.add_subcommand("oracle", "Brute-force bounded satisfiability search");
  oracleCmd->add_option("formula", oracleFormula, "Formula to search a model for")
      ->required();
  oracleCmd->add_option("--agents", oracleAgents,
                        "Comma-separated agent set (default: agents of the formula)");
  oracleCmd->add_option("--max-states", maxStates, "Largest world count to search")
      ->check(CLI::Range(1, 5));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (satCmd->parsed())
      return runSat(satFormula, satAgents, strictRank, dotPre, dotInit, dotFin, witnessPath,
                    tracePath);
    if (checkCmd->parsed()) return runCheck(checkFormula, checkAgents, modelPath, stateName);
    if (oracleCmd->parsed()) return runOracle(oracleFormula, oracleAgents, maxStates);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;  // unreachable: a subcommand is required
}
