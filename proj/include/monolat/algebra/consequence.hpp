#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>
#include <vector>

#include "monolat/algebra/semantics.hpp"
#include "monolat/syntax/equation.hpp"
#include "monolat/syntax/translate.hpp"

namespace monolat {

enum class Verdict { Holds, Refuted, BudgetExceeded };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Refuted: return "refuted";
    case Verdict::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

struct ConsequenceOptions {
  std::uint64_t max_cases = 20'000'000;  ///< assignments or interpretations, summed over the battery
  unsigned jobs = 1;
};

struct ModalCountermodel {
  std::size_t algebra = 0;  ///< index into the battery
  Assignment assignment;
  Elem lhs = 0, rhs = 0;
};

struct FoCountermodel {
  std::size_t algebra = 0;
  Structure structure;
  std::size_t world = 0;
  Elem lhs = 0, rhs = 0;
};

/// Outcome of a bounded consequence check. "Holds" is relative to the
/// battery and bounds searched.
template <class Witness>
struct ConsequenceVerdict {
  Verdict verdict = Verdict::Holds;
  std::uint64_t cases = 0;   ///< cases examined (or that would be, if over budget)
  std::size_t algebras = 0;
  std::optional<Witness> countermodel;
};

using ModalVerdict = ConsequenceVerdict<ModalCountermodel>;
using FoVerdict = ConsequenceVerdict<FoCountermodel>;

namespace detail {

/// Runs fn(i) for i in [0, count) on up to `jobs` threads; results keep index order.
template <class R, class Fn>
std::vector<R> ordered_map(std::size_t count, unsigned jobs, Fn&& fn) {
  std::vector<R> out(count);
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(jobs);
  for (unsigned j = 0; j < jobs; ++j)
    pool.emplace_back([&, j] {
      try {
        for (std::size_t i = j; i < count; i += jobs) out[i] = fn(i);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

inline void collect_props(const ModalFormula& a, std::set<std::uint32_t>& out) {
  switch (a.op()) {
    case Op::Leaf: out.insert(a.atom().index); return;
    case Op::False:
    case Op::Unit: return;
    case Op::Universal:
    case Op::Existential: collect_props(a.body(), out); return;
    default:
      collect_props(a.lhs(), out);
      collect_props(a.rhs(), out);
  }
}

inline void collect_preds(const FoFormula& a, std::set<std::uint32_t>& out) {
  switch (a.op()) {
    case Op::Leaf: out.insert(a.atom().predicate); return;
    case Op::False:
    case Op::Unit: return;
    case Op::Universal:
    case Op::Existential: collect_preds(a.body(), out); return;
    default:
      collect_preds(a.lhs(), out);
      collect_preds(a.rhs(), out);
  }
}

inline std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) { return a > UINT64_MAX - b ? UINT64_MAX : a + b; }

/// Odometer over {0..n-1}^k; returns false after the last tuple.
inline bool advance(std::vector<Elem>& digits, std::size_t n) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < n) return true;
    digits[i] = 0;
  }
  return false;
}

}  // namespace detail

/// Propositional variables occurring in Σ and the goal, ascending.
inline std::vector<std::uint32_t> prop_vars(const Theory<ModalFormula>& sigma, const ModalEquation& goal) {
  std::set<std::uint32_t> s;
  for (const auto& eq : sigma) {
    detail::collect_props(eq.lhs, s);
    detail::collect_props(eq.rhs, s);
  }
  detail::collect_props(goal.lhs, s);
  detail::collect_props(goal.rhs, s);
  return {s.begin(), s.end()};
}

/// Σ ⊨ α ≈ β over a finite battery: every assignment to the occurring
/// variables that satisfies Σ must satisfy the goal. The first countermodel
/// in battery order, then lexicographic assignment order, is reported.
inline ModalVerdict equational_consequence(const std::vector<ModalExpansion>& battery, const Theory<ModalFormula>& sigma,
                                           const ModalEquation& goal, const ConsequenceOptions& opts = {}) {
  const auto vars = prop_vars(sigma, goal);
  ModalVerdict verdict;
  verdict.algebras = battery.size();
  std::uint64_t total = 0;
  for (const auto& M : battery) total = detail::saturating_add(total, detail::saturating_pow(M.size(), vars.size()));
  verdict.cases = total;
  if (total > opts.max_cases) {
    verdict.verdict = Verdict::BudgetExceeded;
    return verdict;
  }

  auto per_algebra = detail::ordered_map<std::optional<ModalCountermodel>>(battery.size(), opts.jobs, [&](std::size_t i) {
    const ModalExpansion& M = battery[i];
    Assignment v = Assignment::for_algebra(M.base());
    std::vector<Elem> digits(vars.size(), 0);
    do {
      for (std::size_t k = 0; k < vars.size(); ++k) v.set(vars[k], digits[k]);
      bool premises = std::all_of(sigma.begin(), sigma.end(),
                                  [&](const ModalEquation& eq) { return eval_modal(M, v, eq.lhs) == eval_modal(M, v, eq.rhs); });
      if (!premises) continue;
      Elem l = eval_modal(M, v, goal.lhs), r = eval_modal(M, v, goal.rhs);
      if (l != r) return std::optional<ModalCountermodel>(ModalCountermodel{i, v, l, r});
    } while (detail::advance(digits, M.size()));
    return std::optional<ModalCountermodel>();
  });

  for (auto& cm : per_algebra)
    if (cm) {
      const ModalExpansion& M = battery[cm->algebra];
      bool genuine = eval_modal(M, cm->assignment, goal.lhs) != eval_modal(M, cm->assignment, goal.rhs);
      for (const auto& eq : sigma)
        genuine = genuine && eval_modal(M, cm->assignment, eq.lhs) == eval_modal(M, cm->assignment, eq.rhs);
      if (!genuine) throw std::logic_error("equational_consequence produced a spurious countermodel");
      verdict.verdict = Verdict::Refuted;
      verdict.countermodel = std::move(cm);
      break;
    }
  return verdict;
}

inline std::vector<std::uint32_t> predicates(const Theory<FoFormula>& theory, const FoEquation& goal) {
  std::set<std::uint32_t> s;
  for (const auto& eq : theory) {
    detail::collect_preds(eq.lhs, s);
    detail::collect_preds(eq.rhs, s);
  }
  detail::collect_preds(goal.lhs, s);
  detail::collect_preds(goal.rhs, s);
  return {s.begin(), s.end()};
}

/// T ⊨ φ ≈ ψ over structures with |S| ≤ max_s on each base: every structure
/// validating T (at every world) must validate the goal.
inline FoVerdict fo_consequence(const std::vector<FiniteAlgebra>& bases, std::size_t max_s, const Theory<FoFormula>& theory,
                                const FoEquation& goal, const ConsequenceOptions& opts = {}) {
  auto check_fm1 = [](const FoFormula& f) {
    if (!is_one_variable(f)) throw SyntaxError("fo_consequence needs formulas without free variables x_i");
  };
  for (const auto& eq : theory) check_fm1(eq.lhs), check_fm1(eq.rhs);
  check_fm1(goal.lhs);
  check_fm1(goal.rhs);

  const auto preds = predicates(theory, goal);
  FoVerdict verdict;
  verdict.algebras = bases.size();
  std::uint64_t total = 0;
  for (const auto& A : bases)
    for (std::size_t s = 1; s <= max_s; ++s)
      total = detail::saturating_add(total, detail::saturating_pow(detail::saturating_pow(A.size(), s), preds.size()));
  verdict.cases = total;
  if (total > opts.max_cases) {
    verdict.verdict = Verdict::BudgetExceeded;
    return verdict;
  }

  auto valid = [](const Structure& S, const FoEquation& eq) {
    for (std::size_t u = 0; u < S.domain_size; ++u)
      if (eval_fo(S, u, eq.lhs) != eval_fo(S, u, eq.rhs)) return false;
    return true;
  };

  auto per_base = detail::ordered_map<std::optional<FoCountermodel>>(bases.size(), opts.jobs, [&](std::size_t i) {
    const FiniteAlgebra& A = bases[i];
    for (std::size_t s = 1; s <= max_s; ++s) {
      std::vector<Elem> digits(preds.size() * s, 0);
      do {
        std::map<std::uint32_t, std::vector<Elem>> interp;
        for (std::size_t k = 0; k < preds.size(); ++k)
          interp[preds[k]] = std::vector<Elem>(digits.begin() + static_cast<std::ptrdiff_t>(k * s),
                                               digits.begin() + static_cast<std::ptrdiff_t>((k + 1) * s));
        Structure S(A, s, std::move(interp));
        if (!std::all_of(theory.begin(), theory.end(), [&](const FoEquation& eq) { return valid(S, eq); })) continue;
        for (std::size_t u = 0; u < s; ++u) {
          Elem l = eval_fo(S, u, goal.lhs), r = eval_fo(S, u, goal.rhs);
          if (l != r) return std::optional<FoCountermodel>(FoCountermodel{i, std::move(S), u, l, r});
        }
      } while (detail::advance(digits, A.size()));
    }
    return std::optional<FoCountermodel>();
  });

  for (auto& cm : per_base)
    if (cm) {
      const Structure& S = cm->structure;
      bool genuine = eval_fo(S, cm->world, goal.lhs) != eval_fo(S, cm->world, goal.rhs);
      for (const auto& eq : theory) genuine = genuine && valid(S, eq);
      if (!genuine) throw std::logic_error("fo_consequence produced a spurious countermodel");
      verdict.verdict = Verdict::Refuted;
      verdict.countermodel = std::move(cm);
      break;
    }
  return verdict;
}

}  // namespace monolat
