#pragma once

#include <string>
#include <vector>

#include "monolat/proof/derivation.hpp"

namespace monolat {

/// Outcome of check_derivation. On failure `path` lists premise indices
/// from the root down to the offending node.
struct DerivationCheck {
  bool ok = true;
  std::vector<std::size_t> path;
  std::string reason;

  explicit operator bool() const { return ok; }
};

inline std::string path_string(const std::vector<std::size_t>& path) {
  std::string out = "root";
  for (auto i : path) out += "." + std::to_string(i);
  return out;
}

namespace detail {

/// Validates one node against its schema. Returns an empty string when the
/// node is a correct rule instance.
inline std::string check_node(const Derivation& d, Calculus calc) {
  const Sequent& c = d.conclusion;
  const std::size_t want = arity(d.rule);
  if (d.premises.size() != want)
    return "expected " + std::to_string(want) + " premise(s), found " + std::to_string(d.premises.size());

  auto prem = [&](std::size_t i) -> const Sequent& { return d.premises[i].conclusion; };
  auto need_principal = [&](Op op) -> std::string {
    if (!d.principal) return "missing principal formula";
    if (d.principal->op() != op) return "principal formula has the wrong main connective";
    return {};
  };
  auto left_principal = [&](Op op) -> std::string {
    if (auto e = need_principal(op); !e.empty()) return e;
    if (!ms::contains(c.antecedent, *d.principal)) return "principal formula not in the conclusion antecedent";
    return {};
  };
  auto right_principal = [&](Op op) -> std::string {
    if (auto e = need_principal(op); !e.empty()) return e;
    if (c.succedent != d.principal) return "principal formula is not the conclusion succedent";
    return {};
  };
  // Antecedent of the conclusion with the principal removed.
  auto rest = [&]() { return *ms::minus(c.antecedent, *d.principal); };

  switch (d.rule) {
    case Rule::Id:
      if (c.antecedent.size() != 1 || c.succedent != c.antecedent[0]) return "(id) needs the shape φ ⇒ φ";
      if (d.principal && *d.principal != c.antecedent[0]) return "(id) principal differs from the sequent";
      return {};
    case Rule::FalseLeft:
      if (c.antecedent != Multiset{FoFormula::falsum()} || c.succedent) return "(f⇒) needs the shape f ⇒";
      return {};
    case Rule::UnitRight:
      if (!c.antecedent.empty() || c.succedent != FoFormula::unit()) return "(⇒e) needs the shape ⇒ e";
      return {};
    case Rule::UnitLeft:
      if (prem(0).succedent != c.succedent || ms::plus(prem(0).antecedent, FoFormula::unit()) != c.antecedent)
        return "(e⇒) conclusion must add e to the premise antecedent";
      return {};
    case Rule::FalseRight:
      if (prem(0).succedent) return "(⇒f) premise succedent must be empty";
      if (c.succedent != FoFormula::falsum() || prem(0).antecedent != c.antecedent)
        return "(⇒f) conclusion must be the premise with succedent f";
      return {};
    case Rule::ImpLeft: {
      if (auto e = left_principal(Op::Imp); !e.empty()) return "(→⇒) " + e;
      if (prem(0).succedent != d.principal->lhs()) return "(→⇒) left premise must prove the antecedent of the implication";
      auto gamma2 = ms::minus(prem(1).antecedent, d.principal->rhs());
      if (!gamma2) return "(→⇒) right premise lacks the consequent of the implication";
      if (ms::plus(prem(0).antecedent, *gamma2) != rest() || prem(1).succedent != c.succedent)
        return "(→⇒) contexts do not add up to the conclusion";
      if (d.context != prem(0).antecedent) return "(→⇒) recorded context split disagrees with the premises";
      return {};
    }
    case Rule::ImpRight:
      if (auto e = right_principal(Op::Imp); !e.empty()) return "(⇒→) " + e;
      if (prem(0).succedent != d.principal->rhs() || prem(0).antecedent != ms::plus(c.antecedent, d.principal->lhs()))
        return "(⇒→) premise must be Γ, φ ⇒ ψ";
      return {};
    case Rule::MulLeft:
      if (auto e = left_principal(Op::Mul); !e.empty()) return "(·⇒) " + e;
      if (prem(0).succedent != c.succedent ||
          prem(0).antecedent != ms::plus(ms::plus(rest(), d.principal->lhs()), d.principal->rhs()))
        return "(·⇒) premise must be Γ, φ, ψ ⇒ Δ";
      return {};
    case Rule::MulRight:
      if (auto e = right_principal(Op::Mul); !e.empty()) return "(⇒·) " + e;
      if (prem(0).succedent != d.principal->lhs() || prem(1).succedent != d.principal->rhs())
        return "(⇒·) premises must prove the two factors";
      if (ms::plus(prem(0).antecedent, prem(1).antecedent) != c.antecedent) return "(⇒·) contexts do not add up";
      if (d.context != prem(0).antecedent) return "(⇒·) recorded context split disagrees with the premises";
      return {};
    case Rule::AndLeft1:
    case Rule::AndLeft2: {
      if (auto e = left_principal(Op::And); !e.empty()) return "(∧⇒) " + e;
      const FoFormula part = d.rule == Rule::AndLeft1 ? d.principal->lhs() : d.principal->rhs();
      if (prem(0).succedent != c.succedent || prem(0).antecedent != ms::plus(rest(), part))
        return "(∧⇒) premise must replace the conjunction by the chosen conjunct";
      return {};
    }
    case Rule::AndRight:
      if (auto e = right_principal(Op::And); !e.empty()) return "(⇒∧) " + e;
      if (prem(0).antecedent != c.antecedent || prem(1).antecedent != c.antecedent ||
          prem(0).succedent != d.principal->lhs() || prem(1).succedent != d.principal->rhs())
        return "(⇒∧) premises must be Γ ⇒ φ and Γ ⇒ ψ";
      return {};
    case Rule::OrLeft:
      if (auto e = left_principal(Op::Or); !e.empty()) return "(∨⇒) " + e;
      if (prem(0).antecedent != ms::plus(rest(), d.principal->lhs()) ||
          prem(1).antecedent != ms::plus(rest(), d.principal->rhs()) || prem(0).succedent != c.succedent ||
          prem(1).succedent != c.succedent)
        return "(∨⇒) premises must be Γ, φ ⇒ Δ and Γ, ψ ⇒ Δ";
      return {};
    case Rule::OrRight1:
    case Rule::OrRight2: {
      if (auto e = right_principal(Op::Or); !e.empty()) return "(⇒∨) " + e;
      const FoFormula part = d.rule == Rule::OrRight1 ? d.principal->lhs() : d.principal->rhs();
      if (prem(0).antecedent != c.antecedent || prem(0).succedent != part)
        return "(⇒∨) premise must prove the chosen disjunct";
      return {};
    }
    case Rule::ForallLeft:
    case Rule::ExistsLeft: {
      const bool universal = d.rule == Rule::ForallLeft;
      const char* tag = universal ? "(∀⇒) " : "(∃⇒) ";
      if (auto e = left_principal(universal ? Op::Universal : Op::Existential); !e.empty()) return tag + e;
      if (!d.term) return std::string(tag) + "missing variable";
      if (prem(0).succedent != c.succedent ||
          prem(0).antecedent != ms::plus(rest(), instantiate(d.principal->body(), *d.term)))
        return std::string(tag) + "premise must replace the quantified formula by its instance";
      if (universal && !occurring_vars(c).count(*d.term))
        return "(∀⇒) side condition (i): " + d.term->name() + " does not occur in the conclusion";
      if (!universal && free_vars(c).count(*d.term))
        return "(∃⇒) side condition (ii): eigenvariable " + d.term->name() + " occurs freely in the conclusion";
      return {};
    }
    case Rule::ForallRight:
    case Rule::ExistsRight: {
      const bool universal = d.rule == Rule::ForallRight;
      const char* tag = universal ? "(⇒∀) " : "(⇒∃) ";
      if (auto e = right_principal(universal ? Op::Universal : Op::Existential); !e.empty()) return tag + e;
      if (!d.term) return std::string(tag) + "missing variable";
      if (prem(0).antecedent != c.antecedent || prem(0).succedent != instantiate(d.principal->body(), *d.term))
        return std::string(tag) + "premise must prove the instance";
      if (universal && free_vars(c).count(*d.term))
        return "(⇒∀) side condition (ii): eigenvariable " + d.term->name() + " occurs freely in the conclusion";
      if (!universal && !occurring_vars(c).count(*d.term))
        return "(⇒∃) side condition (i): " + d.term->name() + " does not occur in the conclusion";
      return {};
    }
    case Rule::Weakening: {
      if (calc != Calculus::FLew) return std::string("(w) is not a rule of ") + to_string(calc);
      auto added = ms::minus(c.antecedent, prem(0).antecedent);
      if (!added) return "(w) premise antecedent is not contained in the conclusion";
      if (*added != d.context) return "(w) recorded formulas disagree with the premises";
      if (prem(0).succedent && prem(0).succedent != c.succedent) return "(w) cannot change a nonempty succedent";
      return {};
    }
    case Rule::Contraction: {
      if (calc != Calculus::FLec) return std::string("(c) is not a rule of ") + to_string(calc);
      if (d.context.empty()) return "(c) needs a nonempty contracted multiset";
      if (!ms::includes(c.antecedent, d.context)) return "(c) contracted formulas must occur in the conclusion";
      if (prem(0).antecedent != ms::plus(c.antecedent, d.context) || prem(0).succedent != c.succedent)
        return "(c) premise must be Γ₁, Γ₂, Γ₂ ⇒ Δ";
      return {};
    }
  }
  return "unknown rule";
}

inline bool check_walk(const Derivation& d, Calculus calc, std::vector<std::size_t>& path, DerivationCheck& out) {
  if (std::string e = check_node(d, calc); !e.empty()) {
    out = DerivationCheck{false, path, e};
    return false;
  }
  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    path.push_back(i);
    if (!check_walk(d.premises[i], calc, path, out)) return false;
    path.pop_back();
  }
  return true;
}

}  // namespace detail

/// Verifies every node of `d` against the rules of `calc`, reporting the
/// first violation in preorder.
inline DerivationCheck check_derivation(const Derivation& d, Calculus calc) {
  DerivationCheck out;
  std::vector<std::size_t> path;
  detail::check_walk(d, calc, path, out);
  return out;
}

}  // namespace monolat
