#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "monolat/syntax/formula.hpp"

namespace monolat {

enum class Notation { Unicode, Ascii };

// ---------------------------------------------------------------------------
// Lexer

enum class Tok : std::uint8_t {
  LParen, RParen, Comma,
  And, Or, Mul, Imp,
  Box, Dia, Forall, Exists,
  False, Unit,
  PropVar, Pred, VarX, VarIndexed,
  Approx, Leq, Turnstile,
  End,
};

struct Token {
  Tok kind;
  std::size_t pos;
  std::uint32_t number = 0;
  std::string text;
};

namespace detail {

inline bool parse_index(std::string_view digits, std::uint32_t& out) {
  if (!digits.empty() && digits.front() == '_') digits.remove_prefix(1);
  if (digits.empty() || digits.size() > 9) return false;
  std::uint32_t v = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    v = v * 10 + static_cast<std::uint32_t>(c - '0');
  }
  out = v;
  return true;
}

}  // namespace detail

inline std::vector<Token> tokenize(std::string_view text) {
  struct Symbol {
    std::string_view spelling;
    Tok kind;
  };
  // Longest spellings first where one is a prefix of another.
  static constexpr Symbol symbols[] = {
      {"/\\", Tok::And},  {"∧", Tok::And},       {"\\/", Tok::Or},        {"∨", Tok::Or},
      {"*", Tok::Mul},    {"·", Tok::Mul},       {"⋅", Tok::Mul},    {"->", Tok::Imp},
      {"→", Tok::Imp}, {"□", Tok::Box},     {"◇", Tok::Dia},    {"◊", Tok::Dia},
      {"∀", Tok::Forall}, {"∃", Tok::Exists}, {"≈", Tok::Approx}, {"=>", Tok::Turnstile},
      {"=", Tok::Approx}, {"<=", Tok::Leq},           {"≤", Tok::Leq},    {"|-", Tok::Turnstile},
      {"⇒", Tok::Turnstile}, {"⊢", Tok::Turnstile}, {"(", Tok::LParen}, {")", Tok::RParen},
      {",", Tok::Comma},
  };

  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (std::isalpha(c)) {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      std::string_view word = text.substr(i, j - i);
      Token t{Tok::End, i, 0, std::string(word)};
      std::uint32_t n = 0;
      if (word == "box") t.kind = Tok::Box;
      else if (word == "dia") t.kind = Tok::Dia;
      else if (word == "A") t.kind = Tok::Forall;
      else if (word == "E") t.kind = Tok::Exists;
      else if (word == "f") t.kind = Tok::False;
      else if (word == "e") t.kind = Tok::Unit;
      else if (word == "x") t.kind = Tok::VarX;
      else if (word[0] == 'x' && detail::parse_index(word.substr(1), n)) t.kind = Tok::VarIndexed, t.number = n;
      else if (word[0] == 'p' && detail::parse_index(word.substr(1), n)) t.kind = Tok::PropVar, t.number = n;
      else if (word[0] == 'P' && detail::parse_index(word.substr(1), n)) t.kind = Tok::Pred, t.number = n;
      else throw SyntaxError("unknown identifier '" + std::string(word) + "'", i);
      out.push_back(std::move(t));
      i = j;
      continue;
    }
    bool matched = false;
    for (const auto& s : symbols) {
      if (text.substr(i, s.spelling.size()) == s.spelling) {
        out.push_back(Token{s.kind, i, 0, std::string(s.spelling)});
        i += s.spelling.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw SyntaxError("unexpected character '" + std::string(1, text[i]) + "'", i);
  }
  out.push_back(Token{Tok::End, text.size(), 0, ""});
  return out;
}

// ---------------------------------------------------------------------------
// Parser
//
// Precedence, loosest first: -> (right-assoc), \/, /\, *, then the unary
// modalities and quantifiers. The binary connectives other than -> associate
// to the left.

template <class F>
class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : tokens_(tokenize(text)) {}

  F parse_formula() { return parse_imp(); }

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    next();
    return true;
  }
  void expect(Tok kind, const char* what) {
    if (!accept(kind)) throw SyntaxError(std::string("expected ") + what, peek().pos);
  }
  void expect_end() {
    if (peek().kind == Tok::RParen) throw SyntaxError("unbalanced parentheses", peek().pos);
    if (peek().kind != Tok::End) throw SyntaxError("unexpected token '" + peek().text + "'", peek().pos);
  }

 private:
  F parse_imp() {
    F lhs = parse_or();
    if (accept(Tok::Imp)) return F::binary(Op::Imp, lhs, parse_imp());
    return lhs;
  }
  F parse_or() {
    F lhs = parse_and();
    while (accept(Tok::Or)) lhs = F::binary(Op::Or, lhs, parse_and());
    return lhs;
  }
  F parse_and() {
    F lhs = parse_mul();
    while (accept(Tok::And)) lhs = F::binary(Op::And, lhs, parse_mul());
    return lhs;
  }
  F parse_mul() {
    F lhs = parse_unary();
    while (accept(Tok::Mul)) lhs = F::binary(Op::Mul, lhs, parse_unary());
    return lhs;
  }

  F parse_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::LParen: {
        next();
        F inner = parse_imp();
        if (!accept(Tok::RParen)) throw SyntaxError("unbalanced parentheses: expected ')'", peek().pos);
        return inner;
      }
      case Tok::False: next(); return F::falsum();
      case Tok::Unit: next(); return F::unit();
      case Tok::Box:
      case Tok::Dia: {
        if constexpr (F::first_order) {
          throw SyntaxError("modality '" + t.text + "' in a first-order formula", t.pos);
        } else {
          Op op = t.kind == Tok::Box ? Op::Universal : Op::Existential;
          next();
          return F::unary(op, parse_unary());
        }
      }
      case Tok::Forall:
      case Tok::Exists: {
        if constexpr (!F::first_order) {
          throw SyntaxError("quantifier '" + t.text + "' in a modal formula", t.pos);
        } else {
          Op op = t.kind == Tok::Forall ? Op::Universal : Op::Existential;
          next();
          const Token& v = peek();
          if (v.kind == Tok::VarIndexed)
            throw SyntaxError("quantifier over free-variable symbol '" + v.text + "'", v.pos);
          if (v.kind != Tok::VarX) throw SyntaxError("expected the bound variable x after quantifier", v.pos);
          next();
          std::size_t body_pos = peek().pos;
          F body = parse_unary();
          if (body.has_indexed_var())
            throw SyntaxError("free variable x_i in the scope of a quantifier", body_pos);
          return F::unary(op, body);
        }
      }
      case Tok::PropVar: {
        if constexpr (F::first_order) {
          throw SyntaxError("propositional variable '" + t.text + "' in a first-order formula", t.pos);
        } else {
          next();
          return F::leaf(PropVar{t.number});
        }
      }
      case Tok::Pred: {
        if constexpr (!F::first_order) {
          throw SyntaxError("predicate '" + t.text + "' in a modal formula", t.pos);
        } else {
          std::uint32_t index = t.number;
          next();
          expect(Tok::LParen, "'(' after predicate symbol");
          const Token& v = next();
          Variable var;
          if (v.kind == Tok::VarIndexed) var = Variable::indexed(v.number);
          else if (v.kind != Tok::VarX) throw SyntaxError("expected a variable argument", v.pos);
          if (!accept(Tok::RParen)) throw SyntaxError("unbalanced parentheses: expected ')'", peek().pos);
          return F::leaf(Predication{index, var});
        }
      }
      case Tok::RParen: throw SyntaxError("unbalanced parentheses", t.pos);
      case Tok::End: throw SyntaxError("unexpected end of input", t.pos);
      default: throw SyntaxError("unexpected token '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

template <class F>
F parse_formula(std::string_view text) {
  FormulaParser<F> parser(text);
  F result = parser.parse_formula();
  parser.expect_end();
  return result;
}

inline ModalFormula parse_modal(std::string_view text) { return parse_formula<ModalFormula>(text); }
inline FoFormula parse_fo(std::string_view text) { return parse_formula<FoFormula>(text); }

// ---------------------------------------------------------------------------
// Printer

namespace detail {

constexpr int precedence(Op op) {
  switch (op) {
    case Op::Imp: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    case Op::Mul: return 4;
    default: return 5;
  }
}

inline const char* binary_symbol(Op op, Notation n) {
  bool u = n == Notation::Unicode;
  switch (op) {
    case Op::And: return u ? " ∧ " : " /\\ ";
    case Op::Or: return u ? " ∨ " : " \\/ ";
    case Op::Mul: return u ? " · " : " * ";
    case Op::Imp: return u ? " → " : " -> ";
    default: return " ? ";
  }
}

inline void print_leaf(std::string& out, const PropVar& v, Notation) { out += "p" + std::to_string(v.index); }
inline void print_leaf(std::string& out, const Predication& a, Notation) {
  out += "P" + std::to_string(a.predicate) + "(" + a.var.name() + ")";
}

template <class F>
void print(std::string& out, const F& f, Notation n) {
  auto child = [&](const F& c, bool parens) {
    if (parens) out += '(';
    print(out, c, n);
    if (parens) out += ')';
  };
  bool u = n == Notation::Unicode;
  switch (f.op()) {
    case Op::Leaf: print_leaf(out, f.atom(), n); return;
    case Op::False: out += 'f'; return;
    case Op::Unit: out += 'e'; return;
    case Op::Universal:
    case Op::Existential: {
      bool all = f.op() == Op::Universal;
      if constexpr (F::first_order) {
        out += u ? (all ? "∀x " : "∃x ") : (all ? "A x " : "E x ");
      } else {
        out += u ? (all ? "□" : "◇") : (all ? "box " : "dia ");
      }
      child(f.body(), is_binary(f.body().op()));
      return;
    }
    default: {
      int mine = precedence(f.op());
      int l = precedence(f.lhs().op());
      int r = precedence(f.rhs().op());
      bool right_assoc = f.op() == Op::Imp;
      child(f.lhs(), right_assoc ? l <= mine : l < mine);
      out += binary_symbol(f.op(), n);
      child(f.rhs(), right_assoc ? r < mine : r <= mine);
      return;
    }
  }
}

}  // namespace detail

/// Canonical text with minimal parentheses; re-parses to the same tree.
template <class L>
std::string to_string(const Formula<L>& f, Notation n = Notation::Unicode) {
  std::string out;
  detail::print(out, f, n);
  return out;
}

}  // namespace monolat
