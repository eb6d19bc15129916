#ifndef EPITAB_FORMULA_HPP
#define EPITAB_FORMULA_HPP

// Formula language for multi-agent epistemic logic with common and
// distributed knowledge.
//
// ASTs are interned: structural equality is pointer equality, and every node
// caches its canonical rendering (minimal parentheses).  The rendering is
// injective on ASTs, so it doubles as a total order and as the interning key.
// The connectives |, -> and <-> exist only in the concrete syntax; the parser
// desugars them into ~ and &.

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace epitab {

// ---------------------------------------------------------------------------
// Agents

class AgentSet {
public:
  AgentSet() = default;
  explicit AgentSet(std::vector<std::string> names);
  AgentSet(std::initializer_list<std::string> names);
  static AgentSet fromCsv(const std::string& csv);

  bool contains(const std::string& name) const;
  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  auto begin() const { return names_.begin(); }
  auto end() const { return names_.end(); }
  const std::vector<std::string>& names() const { return names_; }
  std::string csv() const;
  bool operator==(const AgentSet& o) const { return names_ == o.names_; }

private:
  std::vector<std::string> names_;  // sorted, unique, validated identifiers
};

// ---------------------------------------------------------------------------
// Formulas

enum class Kind { Atom, Not, And, Knows, Dist, Common };

struct FormulaNode {
  Kind kind;
  std::string name;  // atom name (Atom) / agent name (Knows)
  const FormulaNode* left = nullptr;
  const FormulaNode* right = nullptr;
  std::string text;  // canonical rendering
};

using Formula = const FormulaNode*;

// Interned constructors.
Formula atom(const std::string& name);
Formula mkNot(Formula f);
Formula mkAnd(Formula l, Formula r);
Formula knows(const std::string& agent, Formula f);
Formula dist(Formula f);
Formula common(Formula f);

inline const std::string& render(Formula f) { return f->text; }

// Shape helpers.
inline bool isAtom(Formula f) { return f->kind == Kind::Atom; }
inline bool isNot(Formula f) { return f->kind == Kind::Not; }
inline bool isAnd(Formula f) { return f->kind == Kind::And; }
inline bool isBox(Formula f) { return f->kind == Kind::Knows || f->kind == Kind::Dist; }
inline bool isDiamondK(Formula f) { return f->kind == Kind::Not && f->left->kind == Kind::Knows; }
inline bool isDiamondD(Formula f) { return f->kind == Kind::Not && f->left->kind == Kind::Dist; }
inline bool isDiamond(Formula f) { return isDiamondK(f) || isDiamondD(f); }
inline bool isEventuality(Formula f) { return f->kind == Kind::Not && f->left->kind == Kind::Common; }

// ---------------------------------------------------------------------------
// FormulaSet — duplicate-free set iterated in canonical (rendering) order.

class FormulaSet {
public:
  FormulaSet() = default;
  FormulaSet(std::initializer_list<Formula> fs);

  bool contains(Formula f) const;
  bool insert(Formula f);  // false if already present
  bool insertAll(const FormulaSet& o);
  bool subsetOf(const FormulaSet& o) const;
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  std::string renderSet() const;  // "{f1, f2, ...}"

  bool operator==(const FormulaSet& o) const { return items_ == o.items_; }
  bool operator!=(const FormulaSet& o) const { return items_ != o.items_; }
  bool operator<(const FormulaSet& o) const;  // lexicographic on renderings

private:
  std::vector<Formula> items_;  // sorted by rendering, unique
};

// ---------------------------------------------------------------------------
// Parsing / inspection

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t position);
  std::size_t position;
};

// Parses the ASCII grammar.  When `agents` is given, every K{...} agent must
// belong to it; the no-argument overload collects agents without checking.
Formula parse(const std::string& text);
Formula parse(const std::string& text, const AgentSet& agents);

std::vector<std::string> agentsIn(Formula f);  // sorted, unique
std::vector<std::string> atomsIn(Formula f);   // sorted, unique
FormulaSet subformulae(Formula f);
const FormulaSet& subformulaeCached(Formula f);

bool isIdentifier(const std::string& s);

}  // namespace epitab

#endif  // EPITAB_FORMULA_HPP
