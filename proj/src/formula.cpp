#include "epitab/formula.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <unordered_map>

namespace epitab {

namespace {

struct Interner {
  std::mutex mu;
  std::deque<FormulaNode> arena;
  std::unordered_map<std::string, Formula> byText;

  Formula intern(FormulaNode n) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = byText.find(n.text);
    if (it != byText.end()) return it->second;
    arena.push_back(std::move(n));
    Formula f = &arena.back();
    byText.emplace(f->text, f);
    return f;
  }
};

Interner& interner() {
  static Interner i;
  return i;
}

// A unary operator's child needs parentheses exactly when it is a
// conjunction; the left operand of & never does, the right one does when it
// is itself a conjunction (& associates to the left).
std::string wrapUnaryChild(Formula c) {
  return c->kind == Kind::And ? "(" + c->text + ")" : c->text;
}

}  // namespace

bool isIdentifier(const std::string& s) {
  if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
  return std::all_of(s.begin(), s.end(), [](char ch) {
    return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
           (ch >= '0' && ch <= '9') || ch == '_';
  });
}

Formula atom(const std::string& name) {
  if (!isIdentifier(name))
    throw std::invalid_argument("atom(): invalid atom name \"" + name + "\"");
  FormulaNode n;
  n.kind = Kind::Atom;
  n.name = name;
  n.text = name;
  return interner().intern(std::move(n));
}

Formula mkNot(Formula f) {
  FormulaNode n;
  n.kind = Kind::Not;
  n.left = f;
  n.text = "~" + wrapUnaryChild(f);
  return interner().intern(std::move(n));
}

Formula mkAnd(Formula l, Formula r) {
  FormulaNode n;
  n.kind = Kind::And;
  n.left = l;
  n.right = r;
  n.text = l->text + " & " + (r->kind == Kind::And ? "(" + r->text + ")" : r->text);
  return interner().intern(std::move(n));
}

Formula knows(const std::string& agent, Formula f) {
  if (!isIdentifier(agent))
    throw std::invalid_argument("knows(): invalid agent name \"" + agent + "\"");
  FormulaNode n;
  n.kind = Kind::Knows;
  n.name = agent;
  n.left = f;
  n.text = "K{" + agent + "} " + wrapUnaryChild(f);
  return interner().intern(std::move(n));
}

Formula dist(Formula f) {
  FormulaNode n;
  n.kind = Kind::Dist;
  n.left = f;
  n.text = "D " + wrapUnaryChild(f);
  return interner().intern(std::move(n));
}

Formula common(Formula f) {
  FormulaNode n;
  n.kind = Kind::Common;
  n.left = f;
  n.text = "C " + wrapUnaryChild(f);
  return interner().intern(std::move(n));
}

// ---------------------------------------------------------------------------
// AgentSet

AgentSet::AgentSet(std::vector<std::string> names) {
  for (const auto& n : names)
    if (!isIdentifier(n))
      throw std::invalid_argument("AgentSet(): invalid agent name \"" + n + "\"");
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  names_ = std::move(names);
}

AgentSet::AgentSet(std::initializer_list<std::string> names)
    : AgentSet(std::vector<std::string>(names)) {}

AgentSet AgentSet::fromCsv(const std::string& csv) {
  std::vector<std::string> parts{""};
  for (char c : csv) {
    if (c == ',')
      parts.emplace_back();
    else if (c != ' ' && c != '\t')
      parts.back() += c;
  }
  for (const auto& p : parts)
    if (p.empty())
      throw std::invalid_argument("AgentSet::fromCsv(): empty agent name in \"" + csv +
                                  "\"");
  return AgentSet(std::move(parts));
}

bool AgentSet::contains(const std::string& name) const {
  return std::binary_search(names_.begin(), names_.end(), name);
}

std::string AgentSet::csv() const {
  std::string out;
  for (const auto& n : names_) {
    if (!out.empty()) out += ",";
    out += n;
  }
  return out;
}

// ---------------------------------------------------------------------------
// FormulaSet

namespace {
bool textLess(Formula a, Formula b) { return a->text < b->text; }
}  // namespace

FormulaSet::FormulaSet(std::initializer_list<Formula> fs) {
  for (Formula f : fs) insert(f);
}

bool FormulaSet::contains(Formula f) const {
  auto it = std::lower_bound(items_.begin(), items_.end(), f, textLess);
  return it != items_.end() && *it == f;
}

bool FormulaSet::insert(Formula f) {
  auto it = std::lower_bound(items_.begin(), items_.end(), f, textLess);
  if (it != items_.end() && *it == f) return false;
  items_.insert(it, f);
  return true;
}

bool FormulaSet::insertAll(const FormulaSet& o) {
  bool changed = false;
  for (Formula f : o.items_) changed |= insert(f);
  return changed;
}

bool FormulaSet::subsetOf(const FormulaSet& o) const {
  for (Formula f : items_)
    if (!o.contains(f)) return false;
  return true;
}

std::string FormulaSet::renderSet() const {
  std::string out = "{";
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i) out += ", ";
    out += items_[i]->text;
  }
  return out + "}";
}

bool FormulaSet::operator<(const FormulaSet& o) const {
  return std::lexicographical_compare(items_.begin(), items_.end(),
                                      o.items_.begin(), o.items_.end(), textLess);
}

// ---------------------------------------------------------------------------
// Parser

ParseError::ParseError(const std::string& what, std::size_t pos)
    : std::runtime_error(what + " (at position " + std::to_string(pos + 1) + ")"),
      position(pos) {}

namespace {

enum class Tok { LParen, RParen, Tilde, Amp, Pipe, Arrow, Iff, K, D, C, Ident, End };

struct Token {
  Tok type;
  std::string text;
  std::size_t pos;
};

bool isLower(char c) { return c >= 'a' && c <= 'z'; }
bool isIdentChar(char c) {
  return isLower(c) || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    switch (c) {
      case '(': out.push_back({Tok::LParen, "(", i}); ++i; continue;
      case ')': out.push_back({Tok::RParen, ")", i}); ++i; continue;
      case '~': out.push_back({Tok::Tilde, "~", i}); ++i; continue;
      case '&': out.push_back({Tok::Amp, "&", i}); ++i; continue;
      case '|': out.push_back({Tok::Pipe, "|", i}); ++i; continue;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          out.push_back({Tok::Arrow, "->", i});
          i += 2;
          continue;
        }
        throw ParseError("expected \"->\"", i);
      case '<':
        if (i + 2 < s.size() && s[i + 1] == '-' && s[i + 2] == '>') {
          out.push_back({Tok::Iff, "<->", i});
          i += 3;
          continue;
        }
        throw ParseError("expected \"<->\"", i);
      case 'K': {
        std::size_t start = i;
        ++i;
        if (i >= s.size() || s[i] != '{') throw ParseError("expected '{' after K", i);
        ++i;
        std::string agent;
        while (i < s.size() && isIdentChar(s[i])) agent += s[i++];
        if (i >= s.size() || s[i] != '}') throw ParseError("expected '}' after agent name", i);
        ++i;
        if (!isIdentifier(agent))
          throw ParseError("invalid agent name \"" + agent + "\"", start);
        out.push_back({Tok::K, agent, start});
        continue;
      }
      case 'D': out.push_back({Tok::D, "D", i}); ++i; continue;
      case 'C': out.push_back({Tok::C, "C", i}); ++i; continue;
      default:
        if (isLower(c)) {
          std::size_t start = i;
          std::string name;
          while (i < s.size() && isIdentChar(s[i])) name += s[i++];
          out.push_back({Tok::Ident, name, start});
          continue;
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", i);
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

struct Parser {
  const std::vector<Token>& toks;
  std::size_t i = 0;
  const AgentSet* agents;  // may be null: collect without checking

  const Token& peek() const { return toks[i]; }
  Token take() { return toks[i++]; }

  // φ | ψ  ==  ~(~φ & ~ψ)        φ -> ψ  ==  ~(φ & ~ψ)
  static Formula desugarOr(Formula l, Formula r) { return mkNot(mkAnd(mkNot(l), mkNot(r))); }
  static Formula desugarImp(Formula l, Formula r) { return mkNot(mkAnd(l, mkNot(r))); }

  Formula parseIff() {
    Formula l = parseImp();
    while (peek().type == Tok::Iff) {
      take();
      Formula r = parseImp();
      l = mkAnd(desugarImp(l, r), desugarImp(r, l));
    }
    return l;
  }

  Formula parseImp() {
    Formula l = parseOr();
    if (peek().type == Tok::Arrow) {
      take();
      Formula r = parseImp();  // right-associative
      return desugarImp(l, r);
    }
    return l;
  }

  Formula parseOr() {
    Formula l = parseAnd();
    while (peek().type == Tok::Pipe) {
      take();
      l = desugarOr(l, parseAnd());
    }
    return l;
  }

  Formula parseAnd() {
    Formula l = parseUnary();
    while (peek().type == Tok::Amp) {
      take();
      l = mkAnd(l, parseUnary());
    }
    return l;
  }

  Formula parseUnary() {
    const Token& t = peek();
    switch (t.type) {
      case Tok::Tilde: take(); return mkNot(parseUnary());
      case Tok::K: {
        Token k = take();
        if (agents && !agents->contains(k.text))
          throw ParseError("unknown agent \"" + k.text + "\"", k.pos);
        return knows(k.text, parseUnary());
      }
      case Tok::D: take(); return dist(parseUnary());
      case Tok::C: take(); return common(parseUnary());
      case Tok::Ident: {
        Token a = take();
        return atom(a.text);
      }
      case Tok::LParen: {
        take();
        Formula f = parseIff();
        if (peek().type != Tok::RParen) throw ParseError("expected ')'", peek().pos);
        take();
        return f;
      }
      default:
        throw ParseError("expected a formula", t.pos);
    }
  }
};

Formula parseImpl(const std::string& text, const AgentSet* agents) {
  auto toks = lex(text);
  Parser p{toks, 0, agents};
  Formula f = p.parseIff();
  if (p.peek().type != Tok::End)
    throw ParseError("unexpected trailing input \"" + p.peek().text + "\"", p.peek().pos);
  return f;
}

void collectNames(Formula f, std::set<std::string>& agents, std::set<std::string>& atoms) {
  switch (f->kind) {
    case Kind::Atom: atoms.insert(f->name); return;
    case Kind::Knows: agents.insert(f->name); break;
    default: break;
  }
  if (f->left) collectNames(f->left, agents, atoms);
  if (f->right) collectNames(f->right, agents, atoms);
}

}  // namespace

Formula parse(const std::string& text) { return parseImpl(text, nullptr); }
Formula parse(const std::string& text, const AgentSet& agents) {
  return parseImpl(text, &agents);
}

std::vector<std::string> agentsIn(Formula f) {
  std::set<std::string> agents, atoms;
  collectNames(f, agents, atoms);
  return {agents.begin(), agents.end()};
}

std::vector<std::string> atomsIn(Formula f) {
  std::set<std::string> agents, atoms;
  collectNames(f, agents, atoms);
  return {atoms.begin(), atoms.end()};
}

FormulaSet subformulae(Formula f) {
  FormulaSet out;
  std::vector<Formula> work{f};
  while (!work.empty()) {
    Formula g = work.back();
    work.pop_back();
    if (!out.insert(g)) continue;
    if (g->left) work.push_back(g->left);
    if (g->right) work.push_back(g->right);
  }
  return out;
}

const FormulaSet& subformulaeCached(Formula f) {
  static std::mutex mu;
  static std::map<Formula, FormulaSet> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(f);
  if (it == cache.end()) it = cache.emplace(f, subformulae(f)).first;
  return it->second;
}

}  // namespace epitab
