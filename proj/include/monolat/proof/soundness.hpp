#pragma once

#include <vector>

#include "monolat/algebra/consequence.hpp"
#include "monolat/algebra/generators.hpp"
#include "monolat/proof/derivation.hpp"

namespace monolat {

/// The inequation ∏Γ ≤ ∑Δ read off a sequent, as the equation ∏Γ ∧ ∑Δ ≈ ∏Γ.
inline FoEquation sequent_inequation(const Sequent& s) { return leq(prod(s.antecedent), sum(s.succedent)); }

/// FL_e-algebras of size ≤ max_n satisfying the structural rules of `calc`.
inline std::vector<FiniteAlgebra> battery_for(Calculus calc, std::size_t max_n) {
  switch (calc) {
    case Calculus::FLe: return gen::fle_algebras(max_n, FleVariant::Plain);
    case Calculus::FLew: return gen::fle_algebras(max_n, FleVariant::W);
    case Calculus::FLec: return gen::fle_algebras(max_n, FleVariant::C);
  }
  return {};
}

struct SoundnessReport {
  FoEquation inequation;
  FoVerdict verdict;

  bool has_countermodel() const { return verdict.verdict == Verdict::Refuted; }
};

/// Searches the battery for a structure falsifying ∏Γ ≤ ∑Δ at some world.
/// For a derivable sequent no countermodel may exist.
inline SoundnessReport soundness_bridge(const Sequent& s, const std::vector<FiniteAlgebra>& bases, std::size_t max_s,
                                        const ConsequenceOptions& opts = {}) {
  if (!is_one_variable(s)) throw SyntaxError("soundness_bridge needs a sequent without free variables x_i");
  SoundnessReport out{sequent_inequation(s), {}};
  out.verdict = fo_consequence(bases, max_s, {}, out.inequation, opts);
  return out;
}

}  // namespace monolat
