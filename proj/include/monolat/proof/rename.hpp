#pragma once

#include <map>

#include "monolat/proof/derivation.hpp"

namespace monolat {

namespace detail {

/// Free-occurrence substitution along a variable map (identity elsewhere).
inline FoFormula apply_map(const FoFormula& phi, const std::map<Variable, Variable>& rho) {
  if (!phi.has_indexed_var() && !rho.count(Variable::x())) return phi;
  switch (phi.op()) {
    case Op::Leaf: {
      auto it = rho.find(phi.atom().var);
      return it == rho.end() ? phi : P(phi.atom().predicate, it->second);
    }
    case Op::False:
    case Op::Unit: return phi;
    case Op::Universal:
    case Op::Existential: return phi;  // sentences: no free occurrences inside
    default: return FoFormula::binary(phi.op(), apply_map(phi.lhs(), rho), apply_map(phi.rhs(), rho));
  }
}

inline Multiset apply_map(const Multiset& m, const std::map<Variable, Variable>& rho) {
  Multiset out;
  for (const auto& f : m) out.push_back(apply_map(f, rho));
  return ms::sorted(std::move(out));
}

inline Sequent apply_map(const Sequent& s, const std::map<Variable, Variable>& rho) {
  return Sequent(apply_map(s.antecedent, rho), s.succedent ? std::optional(apply_map(*s.succedent, rho)) : std::nullopt);
}

inline void collect_all_vars(const Derivation& d, std::set<Variable>& out) {
  out.merge(occurring_vars(d.conclusion));
  if (d.term) out.insert(*d.term);
  for (const auto& p : d.premises) collect_all_vars(p, out);
}

class Renamer {
 public:
  explicit Renamer(std::uint32_t next_fresh) : next_(next_fresh) {}

  Derivation run(const Derivation& d, const std::map<Variable, Variable>& rho) {
    Derivation out;
    out.conclusion = apply_map(d.conclusion, rho);
    out.rule = d.rule;
    if (d.principal) out.principal = apply_map(*d.principal, rho);
    out.context = apply_map(d.context, rho);

    std::map<Variable, Variable> inner = rho;
    if (d.term) {
      const Variable v = *d.term;
      const bool eigen = d.rule == Rule::ForallRight || d.rule == Rule::ExistsLeft;
      if (eigen) {
        // Keep the eigenvariable's image unless it became free below the root.
        Variable image = image_of(v, rho);
        if (free_vars(out.conclusion).count(image)) image = Variable::indexed(next_++);
        inner[v] = image;
        out.term = image;
      } else if (!free_vars(d.conclusion).count(v)) {
        // Justified by a bound occurrence only: t = x stays x.
        inner[v] = v;
        out.term = v;
      } else {
        out.term = image_of(v, rho);
      }
    }
    for (const auto& p : d.premises) out.premises.push_back(run(p, inner));
    return out;
  }

 private:
  static Variable image_of(Variable v, const std::map<Variable, Variable>& rho) {
    auto it = rho.find(v);
    return it == rho.end() ? v : it->second;
  }

  std::uint32_t next_;
};

}  // namespace detail

/// Replaces, throughout `d`, free x by `z` and free `y` by x (simultaneously).
/// Eigenvariables that would clash are refreshed; instantiations justified
/// only by the bound x keep x. The result has the same shape and md.
inline Derivation rename_derivation(const Derivation& d, Variable y, Variable z) {
  if (y.is_x() || z.is_x()) throw ProofError("rename: y and z must be free-variable symbols x_i");
  if (y == z) throw ProofError("rename: y and z must differ");
  std::set<Variable> used;
  detail::collect_all_vars(d, used);
  if (used.count(z)) throw ProofError("rename: " + z.name() + " is not fresh for the derivation");
  std::uint32_t next = z.index() + 1;
  for (Variable v : used)
    if (!v.is_x()) next = std::max(next, v.index() + 1);
  std::map<Variable, Variable> rho{{Variable::x(), z}, {y, Variable::x()}};
  return detail::Renamer(next).run(d, rho);
}

}  // namespace monolat
