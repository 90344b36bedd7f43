#pragma once

#include <algorithm>
#include <vector>

#include "monolat/proof/check.hpp"

namespace monolat {

struct InterpolationResult {
  FoFormula chi;
  Derivation d1;  ///< Γ ⇒ χ
  Derivation d2;  ///< Π, χ ⇒ Δ
  std::size_t md_d = 0;
  std::size_t md_d1 = 0;
  std::size_t md_d2 = 0;
};

namespace detail {

inline bool disjoint(const std::set<Variable>& a, const std::set<Variable>& b) {
  return std::none_of(a.begin(), a.end(), [&](Variable v) { return b.count(v) > 0; });
}

/// Splits `part` (a sub-multiset of left + right) into the occurrences
/// taken from `left` and those taken from `right`, preferring `left`.
inline std::pair<Multiset, Multiset> allocate(const Multiset& part, const Multiset& left, const Multiset& right) {
  Multiset l, r;
  Multiset left_pool = left;
  for (const auto& f : part) {
    if (auto rest = ms::minus(left_pool, f)) {
      left_pool = std::move(*rest);
      l.push_back(f);
    } else {
      r.push_back(f);
    }
  }
  (void)right;
  return {l, r};
}

/// Extraction by induction on the derivation. `L` is the Γ-side, `R` the
/// Π-side of the antecedent; the succedent always belongs to the Π-side.
/// Swapped calls (L and R exchanged) implement the cases where the
/// induction hypothesis is applied with the roles of the sides reversed.
class Interpolator {
 public:
  struct Part {
    FoFormula chi;
    Derivation d1;
    Derivation d2;
  };

  Part run(const Derivation& d, const Multiset& L, const Multiset& R) {
    const Sequent& c = d.conclusion;
    const auto& S = c.succedent;
    auto sub = [&](std::size_t i, Multiset l, Multiset r) { return run(d.premises[i], ms::sorted(std::move(l)), ms::sorted(std::move(r))); };
    auto on_left = [&]() { return d.principal && ms::contains(L, *d.principal); };
    auto minus = [](const Multiset& m, const FoFormula& f) { return *ms::minus(m, f); };

    switch (d.rule) {
      case Rule::Id:
      case Rule::FalseLeft:
      case Rule::UnitRight:
        if (L.empty()) return {FoFormula::unit(), build::unit_right(), build::unit_left(d)};
        // Γ-side is the whole antecedent: χ = ∏Γ, a sentence since the
        // single formula is shared with the Π-side succedent or is f.
        return {prod(L), build::id(prod(L)), d.rule == Rule::Id ? build::id(prod(L)) : d};

      case Rule::UnitLeft: {
        const FoFormula e = FoFormula::unit();
        if (ms::contains(L, e)) {
          Part p = sub(0, minus(L, e), R);
          return {p.chi, build::unit_left(std::move(p.d1)), std::move(p.d2)};
        }
        Part p = sub(0, L, minus(R, e));
        return {p.chi, std::move(p.d1), build::unit_left(std::move(p.d2))};
      }

      case Rule::FalseRight: {
        Part p = sub(0, L, R);
        return {p.chi, std::move(p.d1), build::false_right(std::move(p.d2))};
      }

      case Rule::MulLeft: {
        const FoFormula& f = *d.principal;
        if (on_left()) {
          Part p = sub(0, ms::plus(ms::plus(minus(L, f), f.lhs()), f.rhs()), R);
          return {p.chi, build::mul_left(std::move(p.d1), f), std::move(p.d2)};
        }
        Part p = sub(0, L, ms::plus(ms::plus(minus(R, f), f.lhs()), f.rhs()));
        return {p.chi, std::move(p.d1), build::mul_left(std::move(p.d2), f)};
      }

      case Rule::AndLeft1:
      case Rule::AndLeft2: {
        const FoFormula& f = *d.principal;
        const int which = d.rule == Rule::AndLeft1 ? 1 : 2;
        const FoFormula part = which == 1 ? f.lhs() : f.rhs();
        if (on_left()) {
          Part p = sub(0, ms::plus(minus(L, f), part), R);
          return {p.chi, build::and_left(std::move(p.d1), which, f), std::move(p.d2)};
        }
        Part p = sub(0, L, ms::plus(minus(R, f), part));
        return {p.chi, std::move(p.d1), build::and_left(std::move(p.d2), which, f)};
      }

      case Rule::OrLeft: {
        const FoFormula& f = *d.principal;
        if (on_left()) {
          Part p1 = sub(0, ms::plus(minus(L, f), f.lhs()), R);
          Part p2 = sub(1, ms::plus(minus(L, f), f.rhs()), R);
          FoFormula chi = disj(p1.chi, p2.chi);
          Derivation d1 = build::or_left(build::or_right(std::move(p1.d1), 1, chi), build::or_right(std::move(p2.d1), 2, chi), f);
          Derivation d2 = build::or_left(std::move(p1.d2), std::move(p2.d2), chi);
          return {chi, std::move(d1), std::move(d2)};
        }
        Part p1 = sub(0, L, ms::plus(minus(R, f), f.lhs()));
        Part p2 = sub(1, L, ms::plus(minus(R, f), f.rhs()));
        FoFormula chi = conj(p1.chi, p2.chi);
        Derivation d1 = build::and_right(std::move(p1.d1), std::move(p2.d1));
        Derivation d2 = build::or_left(build::and_left(std::move(p1.d2), 1, chi), build::and_left(std::move(p2.d2), 2, chi), f);
        return {chi, std::move(d1), std::move(d2)};
      }

      case Rule::ImpLeft: {
        const FoFormula& f = *d.principal;
        const bool left = on_left();
        Multiset l0 = left ? minus(L, f) : L;
        Multiset r0 = left ? R : minus(R, f);
        auto [l1, r1] = allocate(d.premises[0].conclusion.antecedent, l0, r0);
        Multiset l2 = *ms::minus(l0, ms::sorted(l1));
        Multiset r2 = *ms::minus(r0, ms::sorted(r1));
        if (left) {
          // First premise Γ₁, Π₁ ⇒ φ has its succedent on the Γ-side: swap.
          Part a = sub(0, r1, l1);  // a.d1: Π₁ ⇒ χ₁, a.d2: Γ₁, χ₁ ⇒ φ
          Part b = sub(1, ms::plus(l2, f.rhs()), r2);
          FoFormula chi = imp(a.chi, b.chi);
          Derivation d1 = build::imp_right(build::imp_left(std::move(a.d2), std::move(b.d1), f), a.chi);
          Derivation d2 = build::imp_left(std::move(a.d1), std::move(b.d2), chi);
          return {chi, std::move(d1), std::move(d2)};
        }
        Part a = sub(0, l1, r1);
        Part b = sub(1, l2, ms::plus(r2, f.rhs()));
        FoFormula chi = fuse(a.chi, b.chi);
        Derivation d1 = build::mul_right(std::move(a.d1), std::move(b.d1));
        Derivation d2 = build::mul_left(build::imp_left(std::move(a.d2), std::move(b.d2), f), chi);
        return {chi, std::move(d1), std::move(d2)};
      }

      case Rule::ImpRight: {
        const FoFormula& f = *d.principal;
        Part p = sub(0, L, ms::plus(R, f.lhs()));
        return {p.chi, std::move(p.d1), build::imp_right(std::move(p.d2), f.lhs())};
      }

      case Rule::MulRight:
      case Rule::AndRight: {
        Multiset l1 = L, r1 = R, l2 = L, r2 = R;
        if (d.rule == Rule::MulRight) {
          auto split = allocate(d.premises[0].conclusion.antecedent, L, R);
          l1 = split.first;
          r1 = split.second;
          l2 = *ms::minus(L, ms::sorted(l1));
          r2 = *ms::minus(R, ms::sorted(r1));
        }
        Part a = sub(0, l1, r1);
        Part b = sub(1, l2, r2);
        if (d.rule == Rule::MulRight) {
          FoFormula chi = fuse(a.chi, b.chi);
          Derivation d1 = build::mul_right(std::move(a.d1), std::move(b.d1));
          Derivation d2 = build::mul_left(build::mul_right(std::move(a.d2), std::move(b.d2)), chi);
          return {chi, std::move(d1), std::move(d2)};
        }
        FoFormula chi = conj(a.chi, b.chi);
        Derivation d1 = build::and_right(std::move(a.d1), std::move(b.d1));
        Derivation d2 = build::and_right(build::and_left(std::move(a.d2), 1, chi), build::and_left(std::move(b.d2), 2, chi));
        return {chi, std::move(d1), std::move(d2)};
      }

      case Rule::OrRight1:
      case Rule::OrRight2: {
        Part p = sub(0, L, R);
        return {p.chi, std::move(p.d1), build::or_right(std::move(p.d2), d.rule == Rule::OrRight1 ? 1 : 2, *S)};
      }

      case Rule::ForallLeft: {
        const FoFormula& f = *d.principal;
        const Variable u = *d.term;
        const FoFormula inst = instantiate(f.body(), u);
        if (on_left()) {
          std::set<Variable> z = free_vars(R);
          if (S) z.merge(free_vars(*S));
          if (z.count(u)) {
            // u lives on the Π-side: move φ(u) there and pay with ·∀xφ.
            Part p = sub(0, minus(L, f), ms::plus(R, inst));
            FoFormula chi = fuse(p.chi, f);
            Derivation d1 = build::mul_right(std::move(p.d1), build::id(f));
            Derivation d2 = build::mul_left(build::forall_left(std::move(p.d2), f, u), chi);
            return {chi, std::move(d1), std::move(d2)};
          }
          Part p = sub(0, ms::plus(minus(L, f), inst), R);
          return {p.chi, build::forall_left(std::move(p.d1), f, u), std::move(p.d2)};
        }
        if (free_vars(L).count(u)) {
          Part p = sub(0, ms::plus(L, inst), minus(R, f));
          FoFormula chi = imp(f, p.chi);
          Derivation d1 = build::imp_right(build::forall_left(std::move(p.d1), f, u), f);
          Derivation d2 = build::imp_left(build::id(f), std::move(p.d2), chi);
          return {chi, std::move(d1), std::move(d2)};
        }
        Part p = sub(0, L, ms::plus(minus(R, f), inst));
        return {p.chi, std::move(p.d1), build::forall_left(std::move(p.d2), f, u)};
      }

      case Rule::ExistsLeft: {
        const FoFormula& f = *d.principal;
        const Variable y = *d.term;
        const FoFormula inst = instantiate(f.body(), y);
        if (on_left()) {
          Part p = sub(0, ms::plus(minus(L, f), inst), R);
          return {p.chi, build::exists_left(std::move(p.d1), f, y), std::move(p.d2)};
        }
        Part p = sub(0, L, ms::plus(minus(R, f), inst));
        return {p.chi, std::move(p.d1), build::exists_left(std::move(p.d2), f, y)};
      }

      case Rule::ForallRight: {
        Part p = sub(0, L, R);
        return {p.chi, std::move(p.d1), build::forall_right(std::move(p.d2), *d.principal, *d.term)};
      }

      case Rule::ExistsRight: {
        const FoFormula& f = *d.principal;
        const Variable u = *d.term;
        if (free_vars(L).count(u)) {
          // ψ(u) belongs to the Γ-side: apply the hypothesis with sides swapped.
          Part p = sub(0, R, L);  // p.d1: Π ⇒ χ', p.d2: Γ, χ' ⇒ ψ(u)
          FoFormula chi = imp(p.chi, f);
          Derivation d1 = build::imp_right(build::exists_right(std::move(p.d2), f, u), p.chi);
          Derivation d2 = build::imp_left(std::move(p.d1), build::id(f), chi);
          return {chi, std::move(d1), std::move(d2)};
        }
        Part p = sub(0, L, R);
        return {p.chi, std::move(p.d1), build::exists_right(std::move(p.d2), f, u)};
      }

      case Rule::Weakening: {
        auto [l1, r1] = allocate(d.premises[0].conclusion.antecedent, L, R);
        l1 = ms::sorted(l1);
        r1 = ms::sorted(r1);
        Part p = sub(0, l1, r1);
        Multiset gl = *ms::minus(L, l1), gr = *ms::minus(R, r1);
        std::optional<FoFormula> ds;
        if (S && !d.premises[0].conclusion.succedent) ds = S;
        Derivation d1 = gl.empty() ? std::move(p.d1) : build::weaken(std::move(p.d1), gl);
        Derivation d2 = gr.empty() && !ds ? std::move(p.d2) : build::weaken(std::move(p.d2), gr, ds);
        return {p.chi, std::move(d1), std::move(d2)};
      }

      case Rule::Contraction: {
        // Extra copies go to the side holding the contracted occurrence.
        auto [cl, cr] = allocate(d.context, L, R);
        Part p = sub(0, ms::plus(L, ms::sorted(cl)), ms::plus(R, ms::sorted(cr)));
        Derivation d1 = cl.empty() ? std::move(p.d1) : build::contract(std::move(p.d1), cl);
        Derivation d2 = cr.empty() ? std::move(p.d2) : build::contract(std::move(p.d2), cr);
        return {p.chi, std::move(d1), std::move(d2)};
      }
    }
    throw ProofError("interpolate: unknown rule tag");
  }
};

}  // namespace detail

/// Splits a derivation of Γ, Π ⇒ Δ along the given antecedent partition
/// into a sentence χ with derivations of Γ ⇒ χ and Π, χ ⇒ Δ, neither
/// using more quantifier rules per branch than `d`.
inline InterpolationResult interpolate(const Derivation& d, const Multiset& gamma, const Multiset& pi, Calculus calc) {
  Multiset L = ms::sorted(gamma), R = ms::sorted(pi);
  if (ms::plus(L, R) != d.conclusion.antecedent)
    throw ProofError("interpolate: the partition does not match the antecedent of the conclusion");
  std::set<Variable> z = free_vars(R);
  if (d.conclusion.succedent) z.merge(free_vars(*d.conclusion.succedent));
  if (!detail::disjoint(free_vars(L), z))
    throw ProofError("interpolate: the Γ-side shares a free variable with the Π-side or the succedent");
  if (auto verdict = check_derivation(d, calc); !verdict)
    throw ProofError("interpolate: input derivation is invalid at " + path_string(verdict.path) + ": " + verdict.reason);

  auto part = detail::Interpolator{}.run(d, L, R);
  InterpolationResult out{part.chi, std::move(part.d1), std::move(part.d2), md(d), 0, 0};
  out.md_d1 = md(out.d1);
  out.md_d2 = md(out.d2);

  if (!is_sentence(out.chi)) throw std::logic_error("interpolate: χ is not a sentence: " + to_string(out.chi));
  if (out.d1.conclusion != Sequent(L, out.chi)) throw std::logic_error("interpolate: d1 proves the wrong sequent");
  if (out.d2.conclusion != Sequent(ms::plus(R, out.chi), d.conclusion.succedent))
    throw std::logic_error("interpolate: d2 proves the wrong sequent");
  for (const Derivation* e : {&out.d1, &out.d2})
    if (auto verdict = check_derivation(*e, calc); !verdict)
      throw std::logic_error("interpolate: produced derivation fails at " + path_string(verdict.path) + ": " + verdict.reason);
  if (out.md_d1 > out.md_d || out.md_d2 > out.md_d) throw std::logic_error("interpolate: md bound violated");
  return out;
}

/// `gamma_mask[i]` puts antecedent occurrence i (in sorted order) on the Γ-side.
inline InterpolationResult interpolate(const Derivation& d, const std::vector<bool>& gamma_mask, Calculus calc) {
  const Multiset& ant = d.conclusion.antecedent;
  if (gamma_mask.size() != ant.size())
    throw ProofError("interpolate: partition has " + std::to_string(gamma_mask.size()) + " entries for " +
                     std::to_string(ant.size()) + " antecedent formulas");
  Multiset gamma, pi;
  for (std::size_t i = 0; i < ant.size(); ++i) (gamma_mask[i] ? gamma : pi).push_back(ant[i]);
  return interpolate(d, gamma, pi, calc);
}

}  // namespace monolat
