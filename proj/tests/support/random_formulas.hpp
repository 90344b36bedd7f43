#pragma once

#include <random>

#include "monolat/syntax/formula.hpp"

namespace monolat::oracle {

/// Random formulas of depth at most `depth` over `atoms` atoms. First-order
/// output is in Fm¹ unless `free_vars` > 0, in which case leaves outside any
/// quantifier may use x_0 .. x_{free_vars-1}.
template <class F>
class FormulaGenerator {
 public:
  FormulaGenerator(std::uint32_t seed, std::uint32_t atoms = 3, std::uint32_t free_vars = 0)
      : rng_(seed), atoms_(atoms), free_vars_(free_vars) {}

  F operator()(int depth) { return gen(depth, false); }

  std::mt19937& rng() { return rng_; }

 private:
  F gen(int depth, bool scoped) {
    int pick = depth <= 0 ? uniform(0, 2) : uniform(0, 9);
    switch (pick) {
      case 0:
      case 1: return leaf(scoped);
      case 2: return uniform(0, 1) ? F::unit() : F::falsum();
      case 3: return F::binary(Op::And, gen(depth - 1, scoped), gen(depth - 1, scoped));
      case 4: return F::binary(Op::Or, gen(depth - 1, scoped), gen(depth - 1, scoped));
      case 5: return F::binary(Op::Mul, gen(depth - 1, scoped), gen(depth - 1, scoped));
      case 6: return F::binary(Op::Imp, gen(depth - 1, scoped), gen(depth - 1, scoped));
      case 7:
      case 8: return F::unary(Op::Universal, gen(depth - 1, true));
      default: return F::unary(Op::Existential, gen(depth - 1, true));
    }
  }

  F leaf(bool scoped) {
    std::uint32_t i = static_cast<std::uint32_t>(uniform(0, static_cast<int>(atoms_) - 1));
    if constexpr (F::first_order) {
      Variable v = Variable::x();
      if (!scoped && free_vars_ > 0 && uniform(0, 2) == 0)
        v = Variable::indexed(static_cast<std::uint32_t>(uniform(0, static_cast<int>(free_vars_) - 1)));
      return F::leaf(Predication{i, v});
    } else {
      (void)scoped;
      return F::leaf(PropVar{i});
    }
  }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  std::mt19937 rng_;
  std::uint32_t atoms_;
  std::uint32_t free_vars_;
};

}  // namespace monolat::oracle
