#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "monolat/proof/sequent.hpp"

namespace monolat {

class ProofError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Calculus { FLe, FLew, FLec };

inline const char* to_string(Calculus c) {
  switch (c) {
    case Calculus::FLe: return "FLe";
    case Calculus::FLew: return "FLew";
    case Calculus::FLec: return "FLec";
  }
  return "?";
}

inline Calculus parse_calculus(std::string_view s) {
  std::string lower;
  for (char c : s) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "fle") return Calculus::FLe;
  if (lower == "flew") return Calculus::FLew;
  if (lower == "flec") return Calculus::FLec;
  throw std::invalid_argument("unknown calculus '" + std::string(s) + "' (expected fle, flew or flec)");
}

enum class Rule {
  Id, FalseLeft, UnitRight,
  UnitLeft, FalseRight,
  ImpLeft, ImpRight,
  MulLeft, MulRight,
  AndLeft1, AndLeft2, AndRight,
  OrLeft, OrRight1, OrRight2,
  ForallLeft, ForallRight, ExistsLeft, ExistsRight,
  Weakening, Contraction,
};

namespace detail {

struct RuleNames {
  Rule rule;
  const char* ascii;
  const char* unicode;
};

inline constexpr std::array<RuleNames, 21> rule_names{{
    {Rule::Id, "id", "id"},
    {Rule::FalseLeft, "f=>", "f⇒"},
    {Rule::UnitRight, "=>e", "⇒e"},
    {Rule::UnitLeft, "e=>", "e⇒"},
    {Rule::FalseRight, "=>f", "⇒f"},
    {Rule::ImpLeft, "->=>", "→⇒"},
    {Rule::ImpRight, "=>->", "⇒→"},
    {Rule::MulLeft, "*=>", "·⇒"},
    {Rule::MulRight, "=>*", "⇒·"},
    {Rule::AndLeft1, "/\\=>1", "∧⇒₁"},
    {Rule::AndLeft2, "/\\=>2", "∧⇒₂"},
    {Rule::AndRight, "=>/\\", "⇒∧"},
    {Rule::OrLeft, "\\/=>", "∨⇒"},
    {Rule::OrRight1, "=>\\/1", "⇒∨₁"},
    {Rule::OrRight2, "=>\\/2", "⇒∨₂"},
    {Rule::ForallLeft, "A=>", "∀⇒"},
    {Rule::ForallRight, "=>A", "⇒∀"},
    {Rule::ExistsLeft, "E=>", "∃⇒"},
    {Rule::ExistsRight, "=>E", "⇒∃"},
    {Rule::Weakening, "w", "w"},
    {Rule::Contraction, "c", "c"},
}};

}  // namespace detail

inline const char* to_string(Rule r, Notation n = Notation::Unicode) {
  for (const auto& e : detail::rule_names)
    if (e.rule == r) return n == Notation::Unicode ? e.unicode : e.ascii;
  return "?";
}

inline Rule parse_rule(std::string_view s) {
  for (const auto& e : detail::rule_names)
    if (s == e.ascii || s == e.unicode) return e.rule;
  throw ProofError("unknown rule tag '" + std::string(s) + "'");
}

inline bool is_quantifier_rule(Rule r) {
  return r == Rule::ForallLeft || r == Rule::ForallRight || r == Rule::ExistsLeft || r == Rule::ExistsRight;
}

inline std::size_t arity(Rule r) {
  switch (r) {
    case Rule::Id:
    case Rule::FalseLeft:
    case Rule::UnitRight: return 0;
    case Rule::ImpLeft:
    case Rule::MulRight:
    case Rule::AndRight:
    case Rule::OrLeft: return 2;
    default: return 1;
  }
}

/// A derivation tree. Rule data:
///  - `principal`: the formula introduced (antecedent or succedent side);
///  - `term`: t for (∀⇒)/(⇒∃), the eigenvariable for (⇒∀)/(∃⇒);
///  - `context`: Γ₁ of the first premise for (→⇒)/(⇒·), the added
///    formulas for (w), the duplicated Γ₂ for (c).
struct Derivation {
  Sequent conclusion;
  Rule rule = Rule::Id;
  std::optional<FoFormula> principal;
  std::optional<Variable> term;
  Multiset context;
  std::vector<Derivation> premises;

  friend bool operator==(const Derivation&, const Derivation&) = default;
};

/// Largest number of quantifier rules on any root-to-leaf branch.
inline std::size_t md(const Derivation& d) {
  std::size_t best = 0;
  for (const auto& p : d.premises) best = std::max(best, md(p));
  return best + (is_quantifier_rule(d.rule) ? 1 : 0);
}

inline std::size_t height(const Derivation& d) {
  std::size_t best = 0;
  for (const auto& p : d.premises) best = std::max(best, height(p));
  return best + 1;
}

inline std::size_t node_count(const Derivation& d) {
  std::size_t n = 1;
  for (const auto& p : d.premises) n += node_count(p);
  return n;
}

/// Forward construction: each builder computes the conclusion from its
/// premises. Missing premise formulas raise ProofError; side conditions are
/// left to check_derivation.
namespace build {

namespace detail {

inline Multiset take(const Multiset& m, const FoFormula& f, const char* rule) {
  auto rest = ms::minus(m, f);
  if (!rest) throw ProofError(std::string("(") + rule + "): premise lacks " + to_string(f));
  return *rest;
}

inline const FoFormula& succ(const Derivation& d, const char* rule) {
  if (!d.conclusion.succedent) throw ProofError(std::string("(") + rule + "): premise has an empty succedent");
  return *d.conclusion.succedent;
}

inline void expect_op(const FoFormula& f, Op op, const char* rule) {
  if (f.op() != op) throw ProofError(std::string("(") + rule + "): wrong principal formula " + to_string(f));
}

inline Derivation node(Sequent s, Rule r, std::vector<Derivation> premises, std::optional<FoFormula> principal = {},
                       std::optional<Variable> term = {}, Multiset context = {}) {
  return Derivation{std::move(s), r, std::move(principal), term, std::move(context), std::move(premises)};
}

}  // namespace detail

inline Derivation id(const FoFormula& f) { return detail::node(Sequent({f}, f), Rule::Id, {}, f); }
inline Derivation false_left() { return detail::node(Sequent({FoFormula::falsum()}, std::nullopt), Rule::FalseLeft, {}); }
inline Derivation unit_right() { return detail::node(Sequent({}, FoFormula::unit()), Rule::UnitRight, {}); }

inline Derivation unit_left(Derivation d) {
  Sequent s(ms::plus(d.conclusion.antecedent, FoFormula::unit()), d.conclusion.succedent);
  return detail::node(std::move(s), Rule::UnitLeft, {std::move(d)});
}

inline Derivation false_right(Derivation d) {
  if (d.conclusion.succedent) throw ProofError("(⇒f): premise succedent must be empty");
  Sequent s(d.conclusion.antecedent, FoFormula::falsum());
  return detail::node(std::move(s), Rule::FalseRight, {std::move(d)});
}

/// From Γ₁ ⇒ φ and Γ₂, ψ ⇒ Δ to Γ₁, Γ₂, φ→ψ ⇒ Δ.
inline Derivation imp_left(Derivation left, Derivation right, const FoFormula& principal) {
  detail::expect_op(principal, Op::Imp, "→⇒");
  if (detail::succ(left, "→⇒") != principal.lhs()) throw ProofError("(→⇒): left premise does not prove the antecedent");
  Multiset gamma2 = detail::take(right.conclusion.antecedent, principal.rhs(), "→⇒");
  Multiset gamma1 = left.conclusion.antecedent;
  Sequent s(ms::plus(ms::plus(gamma1, gamma2), principal), right.conclusion.succedent);
  return detail::node(std::move(s), Rule::ImpLeft, {std::move(left), std::move(right)}, principal, {}, gamma1);
}

/// From Γ, φ ⇒ ψ to Γ ⇒ φ→ψ.
inline Derivation imp_right(Derivation d, const FoFormula& antecedent_part) {
  FoFormula principal = imp(antecedent_part, detail::succ(d, "⇒→"));
  Sequent s(detail::take(d.conclusion.antecedent, antecedent_part, "⇒→"), principal);
  return detail::node(std::move(s), Rule::ImpRight, {std::move(d)}, principal);
}

inline Derivation mul_left(Derivation d, const FoFormula& principal) {
  detail::expect_op(principal, Op::Mul, "·⇒");
  Multiset rest = detail::take(detail::take(d.conclusion.antecedent, principal.lhs(), "·⇒"), principal.rhs(), "·⇒");
  Sequent s(ms::plus(rest, principal), d.conclusion.succedent);
  return detail::node(std::move(s), Rule::MulLeft, {std::move(d)}, principal);
}

inline Derivation mul_right(Derivation left, Derivation right) {
  FoFormula principal = fuse(detail::succ(left, "⇒·"), detail::succ(right, "⇒·"));
  Multiset gamma1 = left.conclusion.antecedent;
  Sequent s(ms::plus(gamma1, right.conclusion.antecedent), principal);
  return detail::node(std::move(s), Rule::MulRight, {std::move(left), std::move(right)}, principal, {}, gamma1);
}

/// (∧⇒₁) when `which` is 1, (∧⇒₂) when 2.
inline Derivation and_left(Derivation d, int which, const FoFormula& principal) {
  detail::expect_op(principal, Op::And, "∧⇒");
  const FoFormula part = which == 1 ? principal.lhs() : principal.rhs();
  Sequent s(ms::plus(detail::take(d.conclusion.antecedent, part, "∧⇒"), principal), d.conclusion.succedent);
  return detail::node(std::move(s), which == 1 ? Rule::AndLeft1 : Rule::AndLeft2, {std::move(d)}, principal);
}

inline Derivation and_right(Derivation left, Derivation right) {
  if (left.conclusion.antecedent != right.conclusion.antecedent) throw ProofError("(⇒∧): premises differ in context");
  FoFormula principal = conj(detail::succ(left, "⇒∧"), detail::succ(right, "⇒∧"));
  Sequent s(left.conclusion.antecedent, principal);
  return detail::node(std::move(s), Rule::AndRight, {std::move(left), std::move(right)}, principal);
}

inline Derivation or_left(Derivation left, Derivation right, const FoFormula& principal) {
  detail::expect_op(principal, Op::Or, "∨⇒");
  Multiset gamma = detail::take(left.conclusion.antecedent, principal.lhs(), "∨⇒");
  if (detail::take(right.conclusion.antecedent, principal.rhs(), "∨⇒") != gamma ||
      left.conclusion.succedent != right.conclusion.succedent)
    throw ProofError("(∨⇒): premises differ in context");
  Sequent s(ms::plus(gamma, principal), left.conclusion.succedent);
  return detail::node(std::move(s), Rule::OrLeft, {std::move(left), std::move(right)}, principal);
}

inline Derivation or_right(Derivation d, int which, const FoFormula& principal) {
  detail::expect_op(principal, Op::Or, "⇒∨");
  if (detail::succ(d, "⇒∨") != (which == 1 ? principal.lhs() : principal.rhs()))
    throw ProofError("(⇒∨): premise succedent is not a disjunct");
  Sequent s(d.conclusion.antecedent, principal);
  return detail::node(std::move(s), which == 1 ? Rule::OrRight1 : Rule::OrRight2, {std::move(d)}, principal);
}

inline Derivation forall_left(Derivation d, const FoFormula& principal, Variable t) {
  detail::expect_op(principal, Op::Universal, "∀⇒");
  Multiset rest = detail::take(d.conclusion.antecedent, instantiate(principal.body(), t), "∀⇒");
  Sequent s(ms::plus(rest, principal), d.conclusion.succedent);
  return detail::node(std::move(s), Rule::ForallLeft, {std::move(d)}, principal, t);
}

inline Derivation forall_right(Derivation d, const FoFormula& principal, Variable y) {
  detail::expect_op(principal, Op::Universal, "⇒∀");
  if (detail::succ(d, "⇒∀") != instantiate(principal.body(), y)) throw ProofError("(⇒∀): premise is not the instance");
  Sequent s(d.conclusion.antecedent, principal);
  return detail::node(std::move(s), Rule::ForallRight, {std::move(d)}, principal, y);
}

inline Derivation exists_left(Derivation d, const FoFormula& principal, Variable y) {
  detail::expect_op(principal, Op::Existential, "∃⇒");
  Multiset rest = detail::take(d.conclusion.antecedent, instantiate(principal.body(), y), "∃⇒");
  Sequent s(ms::plus(rest, principal), d.conclusion.succedent);
  return detail::node(std::move(s), Rule::ExistsLeft, {std::move(d)}, principal, y);
}

inline Derivation exists_right(Derivation d, const FoFormula& principal, Variable t) {
  detail::expect_op(principal, Op::Existential, "⇒∃");
  if (detail::succ(d, "⇒∃") != instantiate(principal.body(), t)) throw ProofError("(⇒∃): premise is not the instance");
  Sequent s(d.conclusion.antecedent, principal);
  return detail::node(std::move(s), Rule::ExistsRight, {std::move(d)}, principal, t);
}

/// (w): adds `gamma2` to the antecedent and, if given, fills an empty succedent.
inline Derivation weaken(Derivation d, Multiset gamma2, std::optional<FoFormula> delta2 = {}) {
  gamma2 = ms::sorted(std::move(gamma2));
  if (delta2 && d.conclusion.succedent) throw ProofError("(w): succedent already occupied");
  Sequent s(ms::plus(d.conclusion.antecedent, gamma2), delta2 ? delta2 : d.conclusion.succedent);
  return detail::node(std::move(s), Rule::Weakening, {std::move(d)}, {}, {}, std::move(gamma2));
}

/// (c): removes one copy of `gamma2` from a premise holding it twice.
inline Derivation contract(Derivation d, Multiset gamma2) {
  gamma2 = ms::sorted(std::move(gamma2));
  auto rest = ms::minus(d.conclusion.antecedent, gamma2);
  if (!rest || !ms::includes(*rest, gamma2)) throw ProofError("(c): premise lacks the duplicated formulas");
  Sequent s(*rest, d.conclusion.succedent);
  return detail::node(std::move(s), Rule::Contraction, {std::move(d)}, {}, {}, std::move(gamma2));
}

}  // namespace build

}  // namespace monolat
