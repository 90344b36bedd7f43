#pragma once

#include <set>

#include "monolat/syntax/formula.hpp"

namespace monolat {

/// Standard translation from one-variable first-order formulas to modal
/// formulas: P_i(x) -> p_i, forall -> box, exists -> diamond.
inline ModalFormula star(const FoFormula& phi) {
  switch (phi.op()) {
    case Op::Leaf:
      if (!phi.atom().var.is_x())
        throw SyntaxError("star: formula mentions free variable " + phi.atom().var.name());
      return ModalFormula::leaf(PropVar{phi.atom().predicate});
    case Op::False: return ModalFormula::falsum();
    case Op::Unit: return ModalFormula::unit();
    case Op::Universal:
    case Op::Existential: return ModalFormula::unary(phi.op(), star(phi.body()));
    default: return ModalFormula::binary(phi.op(), star(phi.lhs()), star(phi.rhs()));
  }
}

/// Inverse of star.
inline FoFormula circle(const ModalFormula& alpha) {
  switch (alpha.op()) {
    case Op::Leaf: return P(alpha.atom().index);
    case Op::False: return FoFormula::falsum();
    case Op::Unit: return FoFormula::unit();
    case Op::Universal:
    case Op::Existential: return FoFormula::unary(alpha.op(), circle(alpha.body()));
    default: return FoFormula::binary(alpha.op(), circle(alpha.lhs()), circle(alpha.rhs()));
  }
}

namespace detail {

inline void collect_free(const FoFormula& phi, bool under_quantifier, std::set<Variable>& out) {
  switch (phi.op()) {
    case Op::Leaf:
      if (!(under_quantifier && phi.atom().var.is_x())) out.insert(phi.atom().var);
      return;
    case Op::False:
    case Op::Unit: return;
    case Op::Universal:
    case Op::Existential: collect_free(phi.body(), true, out); return;
    default:
      collect_free(phi.lhs(), under_quantifier, out);
      collect_free(phi.rhs(), under_quantifier, out);
  }
}

inline void collect_occurring(const FoFormula& phi, std::set<Variable>& out) {
  switch (phi.op()) {
    case Op::Leaf: out.insert(phi.atom().var); return;
    case Op::False:
    case Op::Unit: return;
    case Op::Universal:
    case Op::Existential:
      out.insert(Variable::x());
      collect_occurring(phi.body(), out);
      return;
    default:
      collect_occurring(phi.lhs(), out);
      collect_occurring(phi.rhs(), out);
  }
}

inline FoFormula substitute_impl(const FoFormula& phi, Variable from, Variable to, bool under_quantifier) {
  switch (phi.op()) {
    case Op::Leaf: {
      const Predication& a = phi.atom();
      if (a.var != from || (under_quantifier && from.is_x())) return phi;
      if (under_quantifier && to.is_x())
        throw SyntaxError("substitution of x for " + from.name() + " would be captured by a quantifier");
      return FoFormula::leaf(Predication{a.predicate, to});
    }
    case Op::False:
    case Op::Unit: return phi;
    case Op::Universal:
    case Op::Existential: {
      if (from.is_x() || !phi.has_indexed_var()) return phi;
      return FoFormula::unary(phi.op(), substitute_impl(phi.body(), from, to, true));
    }
    default: {
      FoFormula l = substitute_impl(phi.lhs(), from, to, under_quantifier);
      FoFormula r = substitute_impl(phi.rhs(), from, to, under_quantifier);
      if (l == phi.lhs() && r == phi.rhs()) return phi;
      return FoFormula::binary(phi.op(), l, r);
    }
  }
}

}  // namespace detail

inline std::set<Variable> free_vars(const FoFormula& phi) {
  std::set<Variable> out;
  detail::collect_free(phi, false, out);
  return out;
}

inline bool is_sentence(const FoFormula& phi) { return free_vars(phi).empty(); }

/// Variables with any occurrence, free or bound; a quantifier counts as an
/// occurrence of x.
inline std::set<Variable> occurring_vars(const FoFormula& phi) {
  std::set<Variable> out;
  detail::collect_occurring(phi, out);
  return out;
}

/// In Fm^1: no x_i anywhere.
inline bool is_one_variable(const FoFormula& phi) { return !phi.has_indexed_var(); }

/// Replaces every free occurrence of `from` by `to`.
inline FoFormula substitute(const FoFormula& phi, Variable from, Variable to) {
  if (from == to) return phi;
  return detail::substitute_impl(phi, from, to, false);
}

/// phi(t) for the body phi(x) of a quantifier: the free x of the body
/// replaced by t.
inline FoFormula instantiate(const FoFormula& body, Variable t) { return substitute(body, Variable::x(), t); }

/// Inverse of instantiate: abstract the free occurrences of `v` to x.
inline FoFormula abstract(const FoFormula& phi, Variable v) { return substitute(phi, v, Variable::x()); }

}  // namespace monolat
