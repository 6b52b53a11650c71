#include "fluxlogic/formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "fluxlogic/errors.hpp"

namespace fluxlogic {

struct Formula::Node {
  Kind kind = Kind::Atom;
  PredicateName predicate;        // Atom only
  std::vector<ObjectName> args;   // Atom only
  std::vector<Formula> children;  // Not: one, And/Or: two
  unsigned depth = 0;
};

Formula Formula::atom(PredicateName predicate, std::vector<ObjectName> args) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Atom;
  node->predicate = std::move(predicate);
  node->args = std::move(args);
  return Formula(std::move(node));
}

Formula Formula::negation(Formula operand) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Not;
  node->depth = operand.depth() + 1;
  node->children.push_back(std::move(operand));
  return Formula(std::move(node));
}

Formula Formula::conjunction(Formula left, Formula right) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::And;
  node->depth = std::max(left.depth(), right.depth()) + 1;
  node->children.push_back(std::move(left));
  node->children.push_back(std::move(right));
  return Formula(std::move(node));
}

Formula Formula::disjunction(Formula left, Formula right) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Or;
  node->depth = std::max(left.depth(), right.depth()) + 1;
  node->children.push_back(std::move(left));
  node->children.push_back(std::move(right));
  return Formula(std::move(node));
}

Formula::Kind Formula::kind() const noexcept { return node_->kind; }

const PredicateName& Formula::predicate() const {
  if (node_->kind != Kind::Atom) throw contract_error("predicate() called on a non-atom");
  return node_->predicate;
}

const std::vector<ObjectName>& Formula::args() const {
  if (node_->kind != Kind::Atom) throw contract_error("args() called on a non-atom");
  return node_->args;
}

const Formula& Formula::operand() const {
  if (node_->kind != Kind::Not) throw contract_error("operand() called on a non-negation");
  return node_->children[0];
}

const Formula& Formula::left() const {
  if (node_->kind != Kind::And && node_->kind != Kind::Or)
    throw contract_error("left() called on a non-binary formula");
  return node_->children[0];
}

const Formula& Formula::right() const {
  if (node_->kind != Kind::And && node_->kind != Kind::Or)
    throw contract_error("right() called on a non-binary formula");
  return node_->children[1];
}

unsigned Formula::depth() const noexcept { return node_->depth; }

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case Kind::Atom:
      return node_->predicate == other.node_->predicate && node_->args == other.node_->args;
    case Kind::Not:
      return node_->children[0] == other.node_->children[0];
    case Kind::And:
    case Kind::Or:
      return node_->children[0] == other.node_->children[0] &&
             node_->children[1] == other.node_->children[1];
  }
  return false;  // unreachable
}

// ---------------------------------------------------------------------------
// Concrete syntax

namespace {

struct Token {
  enum class Kind { Ident, LParen, RParen, Comma, Bang, Amp, Pipe, End };
  Kind kind = Kind::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::string describe(const Token& token) {
  switch (token.kind) {
    case Token::Kind::Ident: return "identifier '" + token.text + "'";
    case Token::Kind::LParen: return "'('";
    case Token::Kind::RParen: return "')'";
    case Token::Kind::Comma: return "','";
    case Token::Kind::Bang: return "'!'";
    case Token::Kind::Amp: return "'&'";
    case Token::Kind::Pipe: return "'|'";
    case Token::Kind::End: return "end of input";
  }
  return "?";
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, column = 1;
  std::size_t i = 0;
  auto bump = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      bump(1);
      continue;
    }
    Token token;
    token.line = line;
    token.column = column;
    switch (c) {
      case '(': token.kind = Token::Kind::LParen; bump(1); break;
      case ')': token.kind = Token::Kind::RParen; bump(1); break;
      case ',': token.kind = Token::Kind::Comma; bump(1); break;
      case '!': token.kind = Token::Kind::Bang; bump(1); break;
      case '&': token.kind = Token::Kind::Amp; bump(1); break;
      case '|': token.kind = Token::Kind::Pipe; bump(1); break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>')
          throw parse_error("implication is not part of the language; use '!', '&' and '|'",
                            line, column, {});
        throw parse_error("unexpected character '-'", line, column, {});
      default: {
        // UTF-8 arrow, for the same reason as "->".
        if (static_cast<unsigned char>(c) == 0xE2 && i + 2 < text.size() &&
            static_cast<unsigned char>(text[i + 1]) == 0x86 &&
            static_cast<unsigned char>(text[i + 2]) == 0x92)
          throw parse_error("implication is not part of the language; use '!', '&' and '|'",
                            line, column, {});
        if (!ident_char(c)) {
          std::ostringstream msg;
          if (c >= 0x20 && c < 0x7f)
            msg << "unexpected character '" << c << "'";
          else
            msg << "unexpected byte 0x" << std::hex
                << static_cast<int>(static_cast<unsigned char>(c));
          throw parse_error(msg.str(), line, column, {});
        }
        std::size_t start = i;
        while (i < text.size() && ident_char(text[i])) bump(1);
        token.kind = Token::Kind::Ident;
        token.text = std::string(text.substr(start, i - start));
        break;
      }
    }
    out.push_back(std::move(token));
  }
  Token end;
  end.kind = Token::Kind::End;
  end.line = line;
  end.column = column;
  out.push_back(std::move(end));
  return out;
}

class Parser {
public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  Formula run() {
    Formula result = or_expr();
    if (peek().kind != Token::Kind::End)
      fail({"'&'", "'|'", "end of input"});
    return result;
  }

private:
  const Token& peek() const { return tokens_[pos_]; }

  Token advance() { return tokens_[pos_++]; }

  bool accept(Token::Kind kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& token = peek();
    throw parse_error("unexpected " + describe(token), token.line, token.column,
                      std::move(expected));
  }

  Formula or_expr() {
    Formula result = and_expr();
    while (accept(Token::Kind::Pipe)) result = Formula::disjunction(result, and_expr());
    return result;
  }

  Formula and_expr() {
    Formula result = unary();
    while (accept(Token::Kind::Amp)) result = Formula::conjunction(result, unary());
    return result;
  }

  Formula unary() {
    if (accept(Token::Kind::Bang)) return Formula::negation(unary());
    return primary();
  }

  Formula primary() {
    if (accept(Token::Kind::LParen)) {
      Formula inner = or_expr();
      if (!accept(Token::Kind::RParen)) fail({"'&'", "'|'", "')'"});
      return inner;
    }
    if (peek().kind != Token::Kind::Ident) fail({"'('", "'!'", "an identifier"});
    Token name = advance();
    if (!accept(Token::Kind::LParen)) fail({"'('"});
    std::vector<ObjectName> args;
    for (;;) {
      if (peek().kind != Token::Kind::Ident) fail({"an identifier"});
      args.push_back(advance().text);
      if (accept(Token::Kind::Comma)) continue;
      if (accept(Token::Kind::RParen)) break;
      fail({"','", "')'"});
    }
    return Formula::atom(name.text, std::move(args));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text) { return Parser(text).run(); }

namespace {

// Or = 0, And = 1, Not/Atom bind tighter than both.
int precedence(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Or: return 0;
    case Formula::Kind::And: return 1;
    case Formula::Kind::Not: return 2;
    case Formula::Kind::Atom: return 3;
  }
  return 3;
}

void render(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      out += f.predicate();
      out += '(';
      const auto& args = f.args();
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ", ";
        out += args[i];
      }
      out += ')';
      return;
    }
    case Formula::Kind::Not: {
      out += '!';
      bool parens = precedence(f.operand()) < 2;
      if (parens) out += '(';
      render(f.operand(), out);
      if (parens) out += ')';
      return;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      int prec = precedence(f);
      // Left operand needs parentheses only below the operator's precedence;
      // the right one also at equal precedence (connectives associate left).
      bool left_parens = precedence(f.left()) < prec;
      bool right_parens = precedence(f.right()) <= prec;
      if (left_parens) out += '(';
      render(f.left(), out);
      if (left_parens) out += ')';
      out += f.kind() == Formula::Kind::And ? " & " : " | ";
      if (right_parens) out += '(';
      render(f.right(), out);
      if (right_parens) out += ')';
      return;
    }
  }
}

}  // namespace

std::string to_string(const Formula& formula) {
  std::string out;
  render(formula, out);
  return out;
}

// ---------------------------------------------------------------------------
// Binding

namespace {

std::int32_t compile(const Formula& f, const FluxingStructure& structure,
                     std::vector<CompiledNode>& nodes, std::vector<CompiledAtom>& atoms) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      auto pred = structure.predicate_index(f.predicate());
      if (!pred) throw bind_error("unknown predicate '" + f.predicate() + "'");
      const Predicate& decl = structure.base().predicates[*pred];
      if (decl.arity != f.args().size()) {
        std::ostringstream msg;
        msg << "predicate '" << f.predicate() << "' arity mismatch: expected " << decl.arity
            << ", got " << f.args().size();
        throw bind_error(msg.str());
      }
      CompiledAtom atom;
      atom.predicate = static_cast<std::uint32_t>(*pred);
      for (const ObjectName& arg : f.args()) {
        auto obj = structure.object_index(arg);
        if (!obj) throw bind_error("unknown object '" + arg + "'");
        atom.objects.push_back(static_cast<std::uint32_t>(*obj));
      }
      atoms.push_back(std::move(atom));
      nodes.push_back({Formula::Kind::Atom, static_cast<std::int32_t>(atoms.size() - 1), -1, -1});
      return static_cast<std::int32_t>(nodes.size() - 1);
    }
    case Formula::Kind::Not: {
      std::int32_t a = compile(f.operand(), structure, nodes, atoms);
      nodes.push_back({Formula::Kind::Not, -1, a, -1});
      return static_cast<std::int32_t>(nodes.size() - 1);
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::int32_t a = compile(f.left(), structure, nodes, atoms);
      std::int32_t b = compile(f.right(), structure, nodes, atoms);
      nodes.push_back({f.kind(), -1, a, b});
      return static_cast<std::int32_t>(nodes.size() - 1);
    }
  }
  throw contract_error("corrupt formula node");  // unreachable
}

}  // namespace

BoundFormula bind(const Formula& formula, const FluxingStructure& structure) {
  BoundFormula bound(formula, &structure);
  compile(formula, structure, bound.nodes_, bound.atoms_);
  return bound;
}

// ---------------------------------------------------------------------------
// Enumeration

FormulaEnumerator::FormulaEnumerator(std::vector<Formula> atoms, unsigned max_depth)
    : pool_(std::move(atoms)), max_depth_(max_depth) {
  for (std::size_t i = 0; i < pool_.size(); ++i) {
    if (pool_[i].kind() != Formula::Kind::Atom)
      throw std::invalid_argument("enumeration base formulas must be plain atoms");
    for (std::size_t j = i + 1; j < pool_.size(); ++j)
      if (pool_[i] == pool_[j])
        throw std::invalid_argument("enumeration base atoms must be pairwise distinct");
  }
}

void FormulaEnumerator::build_next_level() {
  const std::size_t prev_begin = level_begin_;
  const std::size_t prev_end = pool_.size();
  const unsigned prev_depth = built_depth_;

  for (std::size_t i = prev_begin; i < prev_end; ++i)
    pool_.push_back(Formula::negation(pool_[i]));
  for (std::size_t l = 0; l < prev_end; ++l)
    for (std::size_t r = 0; r < prev_end; ++r)
      if (std::max(pool_[l].depth(), pool_[r].depth()) == prev_depth)
        pool_.push_back(Formula::conjunction(pool_[l], pool_[r]));
  for (std::size_t l = 0; l < prev_end; ++l)
    for (std::size_t r = 0; r < prev_end; ++r)
      if (std::max(pool_[l].depth(), pool_[r].depth()) == prev_depth)
        pool_.push_back(Formula::disjunction(pool_[l], pool_[r]));

  level_begin_ = prev_end;
  ++built_depth_;
}

std::optional<Formula> FormulaEnumerator::next() {
  if (emit_pos_ < pool_.size()) return pool_[emit_pos_++];
  while (built_depth_ < max_depth_) {
    build_next_level();
    if (emit_pos_ < pool_.size()) return pool_[emit_pos_++];
  }
  return std::nullopt;
}

}  // namespace fluxlogic
