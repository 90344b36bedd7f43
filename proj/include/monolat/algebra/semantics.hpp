#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "monolat/algebra/modal.hpp"
#include "monolat/syntax/formula.hpp"

namespace monolat {

/// A^W with pointwise operations, box = meet over W, diamond = join over W.
/// A function w -> a(w) is encoded as the base-|A| number whose most
/// significant digit is a(0).
struct FullFunctional {
  FiniteAlgebra base;
  std::size_t worlds;
  ModalExpansion expansion;

  Elem encode(std::span<const Elem> fn) const {
    if (fn.size() != worlds) throw AlgebraError("function has the wrong number of coordinates");
    Elem code = 0;
    for (Elem a : fn) {
      if (a >= base.size()) throw AlgebraError("function value out of range");
      code = code * static_cast<Elem>(base.size()) + a;
    }
    return code;
  }
  std::vector<Elem> decode(Elem code) const {
    std::vector<Elem> fn(worlds);
    for (std::size_t i = worlds; i-- > 0;) {
      fn[i] = code % base.size();
      code /= static_cast<Elem>(base.size());
    }
    return fn;
  }
  Elem coordinate(Elem code, std::size_t world) const { return decode(code)[world]; }
};

inline FullFunctional full_functional(const FiniteAlgebra& A, std::size_t W, std::size_t max_size = 4096) {
  if (W == 0) throw AlgebraError("full functional algebra needs at least one world");
  const std::size_t n = A.size();
  const std::size_t N = checked_power(n, static_cast<unsigned>(W), max_size);
  std::vector<std::vector<Elem>> fns(N);
  for (Elem c = 0; c < N; ++c) {
    fns[c].resize(W);
    Elem code = c;
    for (std::size_t i = W; i-- > 0;) {
      fns[c][i] = code % n;
      code /= static_cast<Elem>(n);
    }
  }
  auto encode = [&](const std::vector<Elem>& fn) {
    Elem code = 0;
    for (Elem a : fn) code = code * static_cast<Elem>(n) + a;
    return code;
  };

  std::vector<Operation> ops;
  for (const auto& op : A.operations()) {
    Operation lifted{op.name, op.arity, std::vector<Elem>(checked_power(N, op.arity))};
    std::size_t index = 0;
    std::vector<Elem> args(op.arity), out(W);
    for_each_tuple(N, op.arity, [&](std::span<const Elem> t) {
      for (std::size_t w = 0; w < W; ++w) {
        for (std::size_t i = 0; i < t.size(); ++i) args[i] = fns[t[i]][w];
        out[w] = A.apply(op, args);
      }
      lifted.table[index++] = encode(out);
      return true;
    });
    ops.push_back(std::move(lifted));
  }

  std::vector<std::string> labels(N);
  for (Elem c = 0; c < N; ++c) {
    std::string s = "(";
    for (std::size_t w = 0; w < W; ++w) s += (w ? "," : "") + A.label(fns[c][w]);
    labels[c] = s + ")";
  }
  std::string name = (A.name().empty() ? std::string("A") : A.name()) + "^" + std::to_string(W);
  FiniteAlgebra power(N, std::move(ops), name, std::move(labels));

  std::vector<Elem> bx(N), dm(N);
  for (Elem c = 0; c < N; ++c) {
    Elem lo = fns[c][0], hi = fns[c][0];
    for (std::size_t w = 1; w < W; ++w) {
      lo = A.meet(lo, fns[c][w]);
      hi = A.join(hi, fns[c][w]);
    }
    bx[c] = encode(std::vector<Elem>(W, lo));
    dm[c] = encode(std::vector<Elem>(W, hi));
  }
  return FullFunctional{A, W, ModalExpansion(std::move(power), std::move(bx), std::move(dm))};
}

/// Element that unmentioned variables default to: e if present, else the
/// bottom, else 0.
inline Elem default_element(const FiniteAlgebra& A) {
  if (A.has_e()) return A.e();
  if (auto b = A.bottom()) return *b;
  return 0;
}

/// Valuation of propositional variables with finite support.
struct Assignment {
  std::map<std::uint32_t, Elem> values;
  Elem fallback = 0;

  static Assignment for_algebra(const FiniteAlgebra& A) { return Assignment{{}, default_element(A)}; }

  Elem operator()(std::uint32_t var) const {
    auto it = values.find(var);
    return it == values.end() ? fallback : it->second;
  }
  void set(std::uint32_t var, Elem value) { values[var] = value; }

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

namespace detail {

inline Elem eval_connective(const FiniteAlgebra& A, Op op, Elem l, Elem r) {
  switch (op) {
    case Op::And: return A.meet(l, r);
    case Op::Or: return A.join(l, r);
    case Op::Mul: return A.mul(l, r);
    case Op::Imp: return A.imp(l, r);
    default: throw std::logic_error("not a binary connective");
  }
}

}  // namespace detail

inline Elem eval_modal(const ModalExpansion& M, const Assignment& v, const ModalFormula& alpha) {
  const FiniteAlgebra& A = M.base();
  switch (alpha.op()) {
    case Op::Leaf: {
      Elem a = v(alpha.atom().index);
      if (a >= A.size()) throw AlgebraError("assignment value out of range");
      return a;
    }
    case Op::False: return A.f();
    case Op::Unit: return A.e();
    case Op::Universal: return M.box(eval_modal(M, v, alpha.body()));
    case Op::Existential: return M.diamond(eval_modal(M, v, alpha.body()));
    default: return detail::eval_connective(A, alpha.op(), eval_modal(M, v, alpha.lhs()), eval_modal(M, v, alpha.rhs()));
  }
}

/// An A-structure: domain {0..domain_size-1} and predicate interpretations.
struct Structure {
  FiniteAlgebra base;
  std::size_t domain_size = 1;
  std::map<std::uint32_t, std::vector<Elem>> interpretation;

  Structure(FiniteAlgebra b, std::size_t s, std::map<std::uint32_t, std::vector<Elem>> interp = {})
      : base(std::move(b)), domain_size(s), interpretation(std::move(interp)) {
    if (domain_size == 0) throw AlgebraError("structure domain must be nonempty");
    for (const auto& [pred, fn] : interpretation) {
      if (fn.size() != domain_size)
        throw AlgebraError("interpretation of P" + std::to_string(pred) + " has the wrong length");
      for (Elem a : fn)
        if (a >= base.size()) throw AlgebraError("interpretation of P" + std::to_string(pred) + " out of range");
    }
  }

  Elem value(std::uint32_t pred, std::size_t u) const {
    auto it = interpretation.find(pred);
    if (it == interpretation.end()) throw AlgebraError("predicate P" + std::to_string(pred) + " is not interpreted");
    return it->second[u];
  }
};

/// Value of a one-variable formula at world u. Only x may occur.
inline Elem eval_fo(const Structure& S, std::size_t u, const FoFormula& phi) {
  const FiniteAlgebra& A = S.base;
  if (u >= S.domain_size) throw AlgebraError("world out of range");
  switch (phi.op()) {
    case Op::Leaf:
      if (!phi.atom().var.is_x()) throw AlgebraError("eval_fo needs a formula with x as its only variable");
      return S.value(phi.atom().predicate, u);
    case Op::False: return A.f();
    case Op::Unit: return A.e();
    case Op::Universal:
    case Op::Existential: {
      bool all = phi.op() == Op::Universal;
      Elem acc = eval_fo(S, 0, phi.body());
      for (std::size_t v = 1; v < S.domain_size; ++v) {
        Elem b = eval_fo(S, v, phi.body());
        acc = all ? A.meet(acc, b) : A.join(acc, b);
      }
      return acc;
    }
    default: return detail::eval_connective(A, phi.op(), eval_fo(S, u, phi.lhs()), eval_fo(S, u, phi.rhs()));
  }
}

/// The evaluation induced by S: p_i goes to the function u -> I(P_i)(u) in
/// the full functional algebra over S's domain.
inline std::pair<FullFunctional, Assignment> structure_to_evaluation(const Structure& S) {
  FullFunctional F = full_functional(S.base, S.domain_size);
  Assignment v = Assignment::for_algebra(F.expansion.base());
  for (const auto& [pred, fn] : S.interpretation) v.set(pred, F.encode(fn));
  return {std::move(F), std::move(v)};
}

/// Inverse direction: interprets P_i as the function v(p_i), for every
/// variable explicitly mentioned in v.
inline Structure evaluation_to_structure(const FullFunctional& F, const Assignment& v) {
  std::map<std::uint32_t, std::vector<Elem>> interp;
  for (const auto& [var, code] : v.values) {
    if (code >= F.expansion.size()) throw AlgebraError("assignment value out of range");
    interp[var] = F.decode(code);
  }
  return Structure(F.base, F.worlds, std::move(interp));
}

}  // namespace monolat
