#include "itl/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace itl {

namespace {

bool valid_atom_name(std::string_view name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name[0]))) {
    return false;
  }
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return name != "false" && name != "true";
}

}  // namespace

Formula Formula::make(Connective kind, std::string atom, const Formula* lhs,
                      const Formula* rhs) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->atom = std::move(atom);
  node->size = 1;
  if (lhs != nullptr) {
    node->lhs = lhs->node_;
    node->size += lhs->node_count();
  }
  if (rhs != nullptr) {
    node->rhs = rhs->node_;
    node->size += rhs->node_count();
  }
  return Formula(std::move(node));
}

Formula Formula::atom(std::string name) {
  if (!valid_atom_name(name)) {
    throw std::invalid_argument("invalid atom name: '" + name + "'");
  }
  return make(Connective::Atom, std::move(name), nullptr, nullptr);
}

Formula Formula::falsum() { return make(Connective::Falsum, "", nullptr, nullptr); }

Formula Formula::conj(Formula lhs, Formula rhs) {
  return make(Connective::And, "", &lhs, &rhs);
}

Formula Formula::disj(Formula lhs, Formula rhs) {
  return make(Connective::Or, "", &lhs, &rhs);
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  return make(Connective::Implies, "", &lhs, &rhs);
}

Formula Formula::next(Formula sub) { return make(Connective::Next, "", &sub, nullptr); }

Formula Formula::eventually(Formula sub) {
  return make(Connective::Eventually, "", &sub, nullptr);
}

Formula Formula::henceforth(Formula sub) {
  return make(Connective::Henceforth, "", &sub, nullptr);
}

Formula Formula::negation(Formula sub) { return implies(std::move(sub), falsum()); }

Formula Formula::verum() { return implies(falsum(), falsum()); }

const std::string& Formula::atom_name() const {
  if (kind() != Connective::Atom) throw std::logic_error("atom_name: not an atom");
  return node_->atom;
}

Formula Formula::lhs() const {
  if (!node_->lhs) throw std::logic_error("lhs: leaf formula");
  return Formula(node_->lhs);
}

Formula Formula::rhs() const {
  if (!node_->rhs) throw std::logic_error("rhs: unary or leaf formula");
  return Formula(node_->rhs);
}

Formula Formula::sub() const { return lhs(); }

bool Formula::is_negation() const {
  return kind() == Connective::Implies && node_->rhs->kind == Connective::Falsum;
}

bool Formula::is_verum() const {
  return is_negation() && node_->lhs->kind == Connective::Falsum;
}

bool Formula::operator==(const Formula& other) const {
  struct Rec {
    static bool eq(const Node* a, const Node* b) {
      if (a == b) return true;
      if (a->kind != b->kind) return false;
      if (a->size != b->size) return false;
      if (a->kind == Connective::Atom) return a->atom == b->atom;
      if ((a->lhs == nullptr) != (b->lhs == nullptr)) return false;
      if ((a->rhs == nullptr) != (b->rhs == nullptr)) return false;
      if (a->lhs && !eq(a->lhs.get(), b->lhs.get())) return false;
      if (a->rhs && !eq(a->rhs.get(), b->rhs.get())) return false;
      return true;
    }
  };
  return Rec::eq(node_.get(), other.node_.get());
}

std::vector<std::string> Formula::atom_names() const {
  std::set<std::string> names;
  struct Rec {
    static void walk(const Node* n, std::set<std::string>& out) {
      if (n->kind == Connective::Atom) out.insert(n->atom);
      if (n->lhs) walk(n->lhs.get(), out);
      if (n->rhs) walk(n->rhs.get(), out);
    }
  };
  Rec::walk(node_.get(), names);
  return {names.begin(), names.end()};
}

std::string Formula::to_string() const { return print_formula(*this); }

bool formula_less(const Formula& a, const Formula& b) {
  if (a.node_count() != b.node_count()) return a.node_count() < b.node_count();
  return a.to_string() < b.to_string();
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

namespace {

// Effective precedence of the printed form: atoms and constants 4, unary 3
// (including the ~ and true sugar), & 2, | 1, -> 0.
int effective_precedence(const Formula& f) {
  switch (f.kind()) {
    case Connective::Atom:
    case Connective::Falsum:
      return 4;
    case Connective::Next:
    case Connective::Eventually:
    case Connective::Henceforth:
      return 3;
    case Connective::And:
      return 2;
    case Connective::Or:
      return 1;
    case Connective::Implies:
      if (f.is_verum()) return 4;
      if (f.is_negation()) return 3;
      return 0;
  }
  return 0;
}

void print_rec(const Formula& f, int min_prec, std::string& out) {
  const int prec = effective_precedence(f);
  const bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (f.kind()) {
    case Connective::Atom:
      out += f.atom_name();
      break;
    case Connective::Falsum:
      out += "false";
      break;
    case Connective::Next:
      out += "X ";
      print_rec(f.sub(), 3, out);
      break;
    case Connective::Eventually:
      out += "F ";
      print_rec(f.sub(), 3, out);
      break;
    case Connective::Henceforth:
      out += "G ";
      print_rec(f.sub(), 3, out);
      break;
    case Connective::And:
      print_rec(f.lhs(), 2, out);
      out += " & ";
      print_rec(f.rhs(), 3, out);
      break;
    case Connective::Or:
      print_rec(f.lhs(), 1, out);
      out += " | ";
      print_rec(f.rhs(), 2, out);
      break;
    case Connective::Implies:
      if (f.is_verum()) {
        out += "true";
      } else if (f.is_negation()) {
        out += '~';
        print_rec(f.lhs(), 3, out);
      } else {
        print_rec(f.lhs(), 1, out);
        out += " -> ";
        print_rec(f.rhs(), 0, out);
      }
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  print_rec(f, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

enum class TokKind {
  Atom,
  False,
  True,
  Not,
  Next,
  Eventually,
  Henceforth,
  And,
  Or,
  Arrow,
  LParen,
  RParen,
  End,
};

struct Token {
  TokKind kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        ++j;
      }
      std::string word(text.substr(i, j - i));
      if (word == "false") {
        tokens.push_back({TokKind::False, word, start});
      } else if (word == "true") {
        tokens.push_back({TokKind::True, word, start});
      } else {
        tokens.push_back({TokKind::Atom, word, start});
      }
      i = j;
      continue;
    }
    switch (c) {
      case 'X':
        tokens.push_back({TokKind::Next, "X", start});
        ++i;
        continue;
      case 'F':
        tokens.push_back({TokKind::Eventually, "F", start});
        ++i;
        continue;
      case 'G':
        tokens.push_back({TokKind::Henceforth, "G", start});
        ++i;
        continue;
      case '~':
        tokens.push_back({TokKind::Not, "~", start});
        ++i;
        continue;
      case '&':
        tokens.push_back({TokKind::And, "&", start});
        ++i;
        continue;
      case '|':
        tokens.push_back({TokKind::Or, "|", start});
        ++i;
        continue;
      case '(':
        tokens.push_back({TokKind::LParen, "(", start});
        ++i;
        continue;
      case ')':
        tokens.push_back({TokKind::RParen, ")", start});
        ++i;
        continue;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          tokens.push_back({TokKind::Arrow, "->", start});
          i += 2;
          continue;
        }
        throw ParseError(start, "unknown token '-' (expected '->')");
      default:
        throw ParseError(start, std::string("unknown token '") + c + "'");
    }
  }
  tokens.push_back({TokKind::End, "", text.size()});
  return tokens;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Formula parse() {
    Formula f = implication();
    if (peek().kind != TokKind::End) {
      throw ParseError(peek().pos, "unexpected '" + peek().text + "'");
    }
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_++]; }

  Formula implication() {
    Formula lhs = disjunction();
    if (peek().kind == TokKind::Arrow) {
      take();
      return Formula::implies(std::move(lhs), implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (peek().kind == TokKind::Or) {
      take();
      f = Formula::disj(std::move(f), conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (peek().kind == TokKind::And) {
      take();
      f = Formula::conj(std::move(f), unary());
    }
    return f;
  }

  Formula unary() {
    switch (peek().kind) {
      case TokKind::Not:
        take();
        return Formula::negation(unary());
      case TokKind::Next:
        take();
        return Formula::next(unary());
      case TokKind::Eventually:
        take();
        return Formula::eventually(unary());
      case TokKind::Henceforth:
        take();
        return Formula::henceforth(unary());
      default:
        return primary();
    }
  }

  Formula primary() {
    const Token tok = take();
    switch (tok.kind) {
      case TokKind::Atom:
        return Formula::atom(tok.text);
      case TokKind::False:
        return Formula::falsum();
      case TokKind::True:
        return Formula::verum();
      case TokKind::LParen: {
        Formula f = implication();
        const Token close = take();
        if (close.kind != TokKind::RParen) {
          throw ParseError(close.pos, "expected ')'");
        }
        return f;
      }
      case TokKind::End:
        throw ParseError(tok.pos, "unexpected end of input");
      default:
        throw ParseError(tok.pos, "unexpected '" + tok.text + "'");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) {
  if (text.empty()) throw ParseError(0, "empty input");
  return Parser(lex(text)).parse();
}

// ---------------------------------------------------------------------------
// Subformula closure
// ---------------------------------------------------------------------------

ClosureSet ClosureSet::of(const Formula& seed) {
  std::vector<Formula> members;
  std::set<std::string> seen;
  struct Rec {
    static void walk(const Formula& f, std::vector<Formula>& out,
                     std::set<std::string>& seen) {
      if (!seen.insert(f.to_string()).second) return;
      out.push_back(f);
      switch (f.kind()) {
        case Connective::Atom:
        case Connective::Falsum:
          break;
        case Connective::Next:
        case Connective::Eventually:
        case Connective::Henceforth:
          walk(f.sub(), out, seen);
          break;
        default:
          walk(f.lhs(), out, seen);
          walk(f.rhs(), out, seen);
          break;
      }
    }
  };
  Rec::walk(seed, members, seen);
  std::sort(members.begin(), members.end(), formula_less);
  ClosureSet result;
  result.members_ = std::move(members);
  return result;
}

std::optional<int> ClosureSet::index_of(const Formula& f) const {
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] == f) return static_cast<int>(i);
  }
  return std::nullopt;
}

ClosureSet subformula_closure(const Formula& f) { return ClosureSet::of(f); }

bool sigma_subset_of(const SigmaSubset& a, const SigmaSubset& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool sigma_contains(const SigmaSubset& s, int index) {
  return std::binary_search(s.begin(), s.end(), index);
}

std::string sigma_to_string(const SigmaSubset& s, const ClosureSet& sigma) {
  std::string out = "{";
  bool first = true;
  for (int idx : s) {
    if (!first) out += ", ";
    first = false;
    out += sigma.at(static_cast<std::size_t>(idx)).to_string();
  }
  out += "}";
  return out;
}

}  // namespace itl
