#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "monolat/proof/check.hpp"

namespace monolat {

enum class SearchOutcome { Derivable, NotDerivable, BoundExhausted };

inline const char* to_string(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::Derivable: return "Derivable";
    case SearchOutcome::NotDerivable: return "NotDerivable";
    case SearchOutcome::BoundExhausted: return "BoundExhausted";
  }
  return "?";
}

/// Order in which instantiating terms t are tried. Both orders try every
/// variable allowed by side condition (i), so neither affects completeness.
enum class TermPolicy {
  Occurring,  ///< x first, then free x_i by index
  FreeFirst,  ///< free variables of the conclusion first, then x
};

struct SearchConfig {
  Calculus calculus = Calculus::FLe;
  /// Maximum (c) applications on one branch (FLec only).
  std::size_t contraction_budget = 2;
  std::size_t depth_cap = 64;
  TermPolicy terms = TermPolicy::Occurring;
  /// Distinct search nodes before giving up with BoundExhausted.
  std::size_t max_nodes = 2'000'000;
};

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::NotDerivable;
  std::optional<Derivation> derivation;
  std::size_t explored = 0;
};

namespace detail {

/// Smallest x_i not free in `s`.
inline Variable fresh_variable(const Sequent& s) {
  auto used = free_vars(s);
  for (std::uint32_t i = 0;; ++i)
    if (!used.count(Variable::indexed(i))) return Variable::indexed(i);
}

inline std::vector<Multiset> distinct(const Multiset& m) {
  std::vector<Multiset> out;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (i == 0 || m[i] != m[i - 1]) out.push_back({m[i]});
  return out;
}

class Prover {
 public:
  explicit Prover(const SearchConfig& cfg) : cfg_(cfg) {}

  SearchResult run(const Sequent& s) {
    Entry e = solve(s, cfg_.calculus == Calculus::FLec ? cfg_.contraction_budget : 0, cfg_.depth_cap, false);
    SearchResult out{e.outcome, std::move(e.derivation), explored_};
    if (out.derivation) {
      auto verdict = check_derivation(*out.derivation, cfg_.calculus);
      if (!verdict) throw std::logic_error("search produced an invalid derivation: " + verdict.reason);
    }
    return out;
  }

 private:
  struct Entry {
    SearchOutcome outcome;
    std::optional<Derivation> derivation;
    std::size_t depth = 0;
  };

  /// A backward rule instance: the premises to prove and the rule data.
  struct Step {
    Rule rule;
    std::optional<FoFormula> principal;
    std::optional<Variable> term;
    Multiset context;
    std::vector<Sequent> premises;
    std::size_t budget_cost = 0;
    bool no_weakening = false;
  };

  using Key = std::tuple<Sequent, std::size_t, bool>;

  Entry solve(const Sequent& s, std::size_t budget, std::size_t depth, bool no_w) {
    if (depth == 0) return {SearchOutcome::BoundExhausted, std::nullopt, depth};
    Key key{s, budget, no_w};
    if (auto it = memo_.find(key); it != memo_.end()) {
      const Entry& e = it->second;
      if (e.outcome == SearchOutcome::NotDerivable) return e;
      if (e.outcome == SearchOutcome::Derivable && height(*e.derivation) <= depth) return e;
      if (e.outcome == SearchOutcome::BoundExhausted && e.depth >= depth) return e;
    }
    if (++explored_ > cfg_.max_nodes) return {SearchOutcome::BoundExhausted, std::nullopt, depth};

    bool truncated = false;
    std::optional<Derivation> found;
    auto attempt = [&](Step step) {
      if (found) return;
      std::vector<Derivation> premises;
      for (const auto& p : step.premises) {
        if (cfg_.calculus != Calculus::FLec && p.size() >= s.size())
          throw std::logic_error("search measure failed to decrease at " + to_string(s));
        Entry sub = solve(p, budget - step.budget_cost, depth - 1, step.no_weakening);
        if (sub.outcome == SearchOutcome::BoundExhausted) truncated = true;
        if (sub.outcome != SearchOutcome::Derivable) return;
        premises.push_back(std::move(*sub.derivation));
      }
      found = Derivation{s, step.rule, std::move(step.principal), step.term, std::move(step.context), std::move(premises)};
    };

    axioms(s, attempt);
    if (!found) left_rules(s, attempt);
    if (!found) right_rules(s, attempt);
    if (!found && cfg_.calculus == Calculus::FLew && !no_w) weakenings(s, attempt);
    if (!found && cfg_.calculus == Calculus::FLec && !s.antecedent.empty()) {
      if (budget == 0) truncated = true;
      else
        for (const auto& one : distinct(s.antecedent))
          attempt(Step{Rule::Contraction, {}, {}, one, {Sequent(ms::plus(s.antecedent, one), s.succedent)}, 1});
    }

    Entry e;
    if (found) e = {SearchOutcome::Derivable, std::move(found), depth};
    else e = {truncated ? SearchOutcome::BoundExhausted : SearchOutcome::NotDerivable, std::nullopt, depth};
    memo_[key] = e;
    return e;
  }

  std::vector<Variable> terms(const Sequent& s) const {
    std::vector<Variable> out;
    auto occ = occurring_vars(s);
    if (cfg_.terms == TermPolicy::FreeFirst) {
      for (auto v : free_vars(s)) out.push_back(v);
      for (auto v : occ)
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    } else {
      out.assign(occ.begin(), occ.end());
    }
    return out;
  }

  template <class Fn>
  void axioms(const Sequent& s, Fn&& attempt) {
    if (s.antecedent.size() == 1 && s.succedent == s.antecedent[0]) attempt(Step{Rule::Id, s.antecedent[0], {}, {}, {}});
    if (s.antecedent == Multiset{FoFormula::falsum()} && !s.succedent) attempt(Step{Rule::FalseLeft, {}, {}, {}, {}});
    if (s.antecedent.empty() && s.succedent == FoFormula::unit()) attempt(Step{Rule::UnitRight, {}, {}, {}, {}});
  }

  template <class Fn>
  void left_rules(const Sequent& s, Fn&& attempt) {
    for (const auto& single : distinct(s.antecedent)) {
      const FoFormula& f = single[0];
      const Multiset rest = *ms::minus(s.antecedent, f);
      auto with = [&](Multiset m) { return Sequent(std::move(m), s.succedent); };
      switch (f.op()) {
        case Op::Unit: attempt(Step{Rule::UnitLeft, {}, {}, {}, {with(rest)}}); break;
        case Op::Mul: attempt(Step{Rule::MulLeft, f, {}, {}, {with(ms::plus(ms::plus(rest, f.lhs()), f.rhs()))}}); break;
        case Op::And:
          attempt(Step{Rule::AndLeft1, f, {}, {}, {with(ms::plus(rest, f.lhs()))}});
          attempt(Step{Rule::AndLeft2, f, {}, {}, {with(ms::plus(rest, f.rhs()))}});
          break;
        case Op::Or:
          attempt(Step{Rule::OrLeft, f, {}, {}, {with(ms::plus(rest, f.lhs())), with(ms::plus(rest, f.rhs()))}});
          break;
        case Op::Imp:
          for (const auto& gamma1 : ms::submultisets(rest)) {
            Multiset gamma2 = *ms::minus(rest, gamma1);
            attempt(Step{Rule::ImpLeft, f, {}, gamma1, {Sequent(gamma1, f.lhs()), with(ms::plus(gamma2, f.rhs()))}});
          }
          break;
        case Op::Universal:
          for (Variable t : terms(s))
            attempt(Step{Rule::ForallLeft, f, t, {}, {with(ms::plus(rest, instantiate(f.body(), t)))}});
          break;
        case Op::Existential: {
          Variable y = fresh_variable(s);
          attempt(Step{Rule::ExistsLeft, f, y, {}, {with(ms::plus(rest, instantiate(f.body(), y)))}});
          break;
        }
        default: break;
      }
    }
  }

  template <class Fn>
  void right_rules(const Sequent& s, Fn&& attempt) {
    if (!s.succedent) return;
    const FoFormula& f = *s.succedent;
    const Multiset& gamma = s.antecedent;
    switch (f.op()) {
      case Op::False: attempt(Step{Rule::FalseRight, {}, {}, {}, {Sequent(gamma, std::nullopt)}}); break;
      case Op::Imp: attempt(Step{Rule::ImpRight, f, {}, {}, {Sequent(ms::plus(gamma, f.lhs()), f.rhs())}}); break;
      case Op::Mul:
        for (const auto& gamma1 : ms::submultisets(gamma))
          attempt(Step{Rule::MulRight, f, {}, gamma1, {Sequent(gamma1, f.lhs()), Sequent(*ms::minus(gamma, gamma1), f.rhs())}});
        break;
      case Op::And: attempt(Step{Rule::AndRight, f, {}, {}, {Sequent(gamma, f.lhs()), Sequent(gamma, f.rhs())}}); break;
      case Op::Or:
        attempt(Step{Rule::OrRight1, f, {}, {}, {Sequent(gamma, f.lhs())}});
        attempt(Step{Rule::OrRight2, f, {}, {}, {Sequent(gamma, f.rhs())}});
        break;
      case Op::Universal: {
        Variable y = fresh_variable(s);
        attempt(Step{Rule::ForallRight, f, y, {}, {Sequent(gamma, instantiate(f.body(), y))}});
        break;
      }
      case Op::Existential:
        for (Variable t : terms(s)) attempt(Step{Rule::ExistsRight, f, t, {}, {Sequent(gamma, instantiate(f.body(), t))}});
        break;
      default: break;
    }
  }

  /// Every strictly smaller premise Γ₁ ⇒ Δ₁ of a (w) step. Two consecutive
  /// weakenings collapse into one, so the premise may not weaken again.
  template <class Fn>
  void weakenings(const Sequent& s, Fn&& attempt) {
    std::vector<std::optional<FoFormula>> succs{s.succedent};
    if (s.succedent) succs.push_back(std::nullopt);
    for (const auto& gamma1 : ms::submultisets(s.antecedent))
      for (const auto& delta1 : succs) {
        if (gamma1.size() == s.antecedent.size() && delta1 == s.succedent) continue;
        Step step{Rule::Weakening, {}, {}, *ms::minus(s.antecedent, gamma1), {Sequent(gamma1, delta1)}};
        step.no_weakening = true;
        attempt(std::move(step));
      }
  }

  SearchConfig cfg_;
  std::map<Key, Entry> memo_;
  std::size_t explored_ = 0;
};

}  // namespace detail

/// Exhaustive backward proof search. NotDerivable is reported only when
/// every branch was closed without hitting the depth cap, the node limit or
/// the contraction budget.
inline SearchResult prove(const Sequent& s, const SearchConfig& cfg = {}) { return detail::Prover(cfg).run(s); }

}  // namespace monolat
