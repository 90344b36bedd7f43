#pragma once

#include <string>
#include <vector>

#include "monolat/algebra/finite_algebra.hpp"

namespace monolat {

/// A failed law together with the first witness tuple in lexicographic order.
struct Violation {
  std::string law;
  std::vector<Elem> witness;
};

struct CheckReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  const Violation* find(const std::string& law) const {
    for (const auto& v : violations)
      if (v.law == law) return &v;
    return nullptr;
  }
};

/// Scans {0..n-1}^arity lexicographically and records the first tuple on
/// which `holds` is false under `law`.
template <class Pred>
bool check_law(CheckReport& report, const std::string& law, std::size_t n, unsigned arity, Pred&& holds) {
  std::vector<Elem> witness;
  bool ok = for_each_tuple(n, arity, [&](std::span<const Elem> t) {
    if (holds(t)) return true;
    witness.assign(t.begin(), t.end());
    return false;
  });
  if (!ok) report.violations.push_back({law, std::move(witness)});
  return ok;
}

struct LatticeReport : CheckReport {
  /// order[a*n+b] iff a∧b = a.
  std::vector<bool> order;
  std::size_t size = 0;

  bool leq(Elem a, Elem b) const { return order[a * size + b]; }
};

inline LatticeReport check_lattice(const FiniteAlgebra& A) {
  LatticeReport r;
  const std::size_t n = A.size();
  r.size = n;
  r.order.resize(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) r.order[a * n + b] = A.meet(a, b) == a;

  check_law(r, "meet-commutative", n, 2, [&](auto t) { return A.meet(t[0], t[1]) == A.meet(t[1], t[0]); });
  check_law(r, "join-commutative", n, 2, [&](auto t) { return A.join(t[0], t[1]) == A.join(t[1], t[0]); });
  check_law(r, "meet-associative", n, 3, [&](auto t) {
    return A.meet(A.meet(t[0], t[1]), t[2]) == A.meet(t[0], A.meet(t[1], t[2]));
  });
  check_law(r, "join-associative", n, 3, [&](auto t) {
    return A.join(A.join(t[0], t[1]), t[2]) == A.join(t[0], A.join(t[1], t[2]));
  });
  check_law(r, "meet-absorption", n, 2, [&](auto t) { return A.meet(t[0], A.join(t[0], t[1])) == t[0]; });
  check_law(r, "join-absorption", n, 2, [&](auto t) { return A.join(t[0], A.meet(t[0], t[1])) == t[0]; });
  check_law(r, "order-consistency", n, 2,
            [&](auto t) { return (A.meet(t[0], t[1]) == t[0]) == (A.join(t[0], t[1]) == t[1]); });
  return r;
}

enum class FleVariant { Plain, W, C };

inline const char* to_string(FleVariant v) {
  switch (v) {
    case FleVariant::Plain: return "plain";
    case FleVariant::W: return "w";
    case FleVariant::C: return "c";
  }
  return "?";
}

/// Commutative residuated lattice laws for (·, →, e), plus integrality and
/// f-bottom for `w`, square-increasingness for `c`. Lattice laws are not
/// repeated here.
inline CheckReport check_fle(const FiniteAlgebra& A, FleVariant variant = FleVariant::Plain) {
  if (!A.has_fle_signature()) throw AlgebraError("check_fle needs operations mul, imp, f and e");
  CheckReport r;
  const std::size_t n = A.size();
  const Elem e = A.e(), f = A.f();
  check_law(r, "mul-commutative", n, 2, [&](auto t) { return A.mul(t[0], t[1]) == A.mul(t[1], t[0]); });
  check_law(r, "mul-associative", n, 3, [&](auto t) {
    return A.mul(A.mul(t[0], t[1]), t[2]) == A.mul(t[0], A.mul(t[1], t[2]));
  });
  check_law(r, "unit", n, 1, [&](auto t) { return A.mul(t[0], e) == t[0]; });
  check_law(r, "residuation", n, 3,
            [&](auto t) { return A.leq(A.mul(t[0], t[1]), t[2]) == A.leq(t[0], A.imp(t[1], t[2])); });
  if (variant == FleVariant::W) {
    check_law(r, "f-below", n, 1, [&](auto t) { return A.leq(f, t[0]); });
    check_law(r, "integral", n, 1, [&](auto t) { return A.leq(t[0], e); });
  }
  if (variant == FleVariant::C) check_law(r, "square-increasing", n, 1, [&](auto t) { return A.leq(t[0], A.mul(t[0], t[0])); });
  return r;
}

}  // namespace monolat
