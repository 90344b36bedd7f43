#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "monolat/syntax/text.hpp"

namespace monolat {

/// An ordered pair lhs ≈ rhs over one syntax.
template <class F>
struct Equation {
  F lhs;
  F rhs;

  friend bool operator==(const Equation&, const Equation&) = default;
};

template <class F>
using Theory = std::vector<Equation<F>>;

using ModalEquation = Equation<ModalFormula>;
using FoEquation = Equation<FoFormula>;

/// a ≤ b, stored in its defining form a ∧ b ≈ a.
template <class F>
Equation<F> leq(const F& a, const F& b) {
  return Equation<F>{conj(a, b), a};
}

template <class F>
std::string to_string(const Equation<F>& eq, Notation n = Notation::Unicode) {
  return to_string(eq.lhs, n) + (n == Notation::Unicode ? " ≈ " : " = ") + to_string(eq.rhs, n);
}

/// Accepts `a ≈ b`, `a = b`, and `a ≤ b` / `a <= b` (expanded to a ∧ b ≈ a).
template <class F>
Equation<F> parse_equation(std::string_view text) {
  FormulaParser<F> parser(text);
  F lhs = parser.parse_formula();
  const Token& sep = parser.peek();
  bool inequality = sep.kind == Tok::Leq;
  if (sep.kind != Tok::Approx && !inequality) throw SyntaxError("expected '≈' or '≤' in equation", sep.pos);
  parser.next();
  F rhs = parser.parse_formula();
  parser.expect_end();
  return inequality ? leq(lhs, rhs) : Equation<F>{lhs, rhs};
}

/// One equation per line; blank lines and lines starting with '#' are skipped.
template <class F>
Theory<F> parse_theory(std::string_view text) {
  Theory<F> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(parse_equation<F>(line));
  }
  return out;
}

}  // namespace monolat
