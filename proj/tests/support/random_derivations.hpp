#pragma once

#include <random>
#include <vector>

#include "monolat/proof/check.hpp"

namespace monolat::oracle {

/// Random derivations built forward from axioms, so derivability is known by
/// construction. Each step picks a rule at random and keeps the result only
/// if the node passes the calculus' local check; otherwise the premise is
/// returned unchanged. With `one_variable` set, leaves use only x, so free
/// x_i arise only as eigenvariables/instances and conclusions often lie in Fm¹.
class DerivationGenerator {
 public:
  DerivationGenerator(std::uint32_t seed, Calculus calc, bool one_variable = false)
      : rng_(seed), calc_(calc), one_variable_(one_variable) {}

  Derivation operator()(int depth) { return gen(depth); }

  std::mt19937& rng() { return rng_; }

 private:
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Variable random_var() {
    if (one_variable_ || uniform(0, 2) == 0) return Variable::x();
    return Variable::indexed(static_cast<std::uint32_t>(uniform(0, 1)));
  }

  FoFormula atom() { return P(static_cast<std::uint32_t>(uniform(0, 2)), random_var()); }

  FoFormula small_formula() {
    switch (uniform(0, 7)) {
      case 0: return uniform(0, 1) ? FoFormula::unit() : FoFormula::falsum();
      case 1: return forall(P(static_cast<std::uint32_t>(uniform(0, 2))));
      case 2: return exists(P(static_cast<std::uint32_t>(uniform(0, 2))));
      default: return atom();
    }
  }

  Derivation leaf() {
    switch (uniform(0, 9)) {
      case 0: return build::unit_right();
      case 1: return build::false_left();
      default: return build::id(small_formula());
    }
  }

  const FoFormula& pick(const Multiset& m) { return m[static_cast<std::size_t>(uniform(0, static_cast<int>(m.size()) - 1))]; }

  static bool small_enough(const Derivation& d) {
    return d.conclusion.antecedent.size() <= 6 && d.conclusion.size() <= 60;
  }

  /// Node-local check; the premises are correct by construction.
  bool local_ok(const Derivation& d) const { return monolat::detail::check_node(d, calc_).empty(); }

  /// A variable to abstract from `f` so that f = body(t): f must have no
  /// free variable other than t.
  std::optional<Variable> abstraction_var(const FoFormula& f) {
    auto fv = free_vars(f);
    if (fv.size() > 1) return std::nullopt;
    if (fv.empty()) return random_var();
    return *fv.begin();
  }

  Derivation gen(int depth) {
    if (depth <= 0) return leaf();
    try {
      return step(depth);
    } catch (const ProofError&) {
      return leaf();
    } catch (const SyntaxError&) {
      return leaf();
    }
  }

  Derivation step(int depth) {
    Derivation d = gen(depth - 1);
    const Multiset& ant = d.conclusion.antecedent;
    const auto& succ = d.conclusion.succedent;
    Derivation out = d;
    switch (uniform(0, 17)) {
      case 0: out = build::unit_left(d); break;
      case 1:
        if (!succ) out = build::false_right(d);
        break;
      case 2:
        if (succ) {
          Derivation e = gen(depth - 1);
          if (!e.conclusion.antecedent.empty()) out = build::imp_left(d, e, imp(*succ, pick(e.conclusion.antecedent)));
        }
        break;
      case 3:
        if (succ && !ant.empty()) out = build::imp_right(d, pick(ant));
        break;
      case 4:
        if (ant.size() >= 2) {
          FoFormula a = ant[0], b = ant[1];
          out = build::mul_left(d, fuse(a, b));
        }
        break;
      case 5:
        if (succ) {
          Derivation e = gen(depth - 1);
          if (e.conclusion.succedent) out = build::mul_right(d, e);
        }
        break;
      case 6:
        if (!ant.empty()) {
          int which = uniform(1, 2);
          FoFormula a = pick(ant), other = small_formula();
          out = build::and_left(d, which, which == 1 ? conj(a, other) : conj(other, a));
        }
        break;
      case 7:
        if (succ) {
          Derivation e = gen(depth - 1);
          out = build::and_right(d, e.conclusion.antecedent == ant && e.conclusion.succedent ? e : d);
        }
        break;
      case 8:
        if (!ant.empty()) {
          FoFormula a = pick(ant);
          out = build::or_left(d, d, disj(a, a));
        }
        break;
      case 9:
        if (succ) {
          int which = uniform(1, 2);
          FoFormula other = small_formula();
          out = build::or_right(d, which, which == 1 ? disj(*succ, other) : disj(other, *succ));
        }
        break;
      case 10:
      case 11:
        if (!ant.empty()) {
          FoFormula a = pick(ant);
          if (auto v = abstraction_var(a)) {
            FoFormula body = abstract(a, *v);
            out = uniform(0, 1) ? build::forall_left(d, forall(body), *v) : build::exists_left(d, exists(body), *v);
          }
        }
        break;
      case 12:
      case 13:
        if (succ) {
          if (auto v = abstraction_var(*succ)) {
            FoFormula body = abstract(*succ, *v);
            out = uniform(0, 1) ? build::forall_right(d, forall(body), *v) : build::exists_right(d, exists(body), *v);
          }
        }
        break;
      case 14:
      case 15:
        if (calc_ == Calculus::FLew) {
          std::optional<FoFormula> fill;
          if (!succ && uniform(0, 1)) fill = small_formula();
          out = build::weaken(d, uniform(0, 1) ? Multiset{small_formula()} : Multiset{}, fill);
        } else if (calc_ == Calculus::FLec && succ && !ant.empty()) {
          out = build::contract(build::mul_right(d, d), ant);
        }
        break;
      default:
        if (succ && !ant.empty()) out = build::imp_right(d, pick(ant));
        break;
    }
    return small_enough(out) && local_ok(out) ? out : d;
  }

  std::mt19937 rng_;
  Calculus calc_;
  bool one_variable_;
};

}  // namespace monolat::oracle
