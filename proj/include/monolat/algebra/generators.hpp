#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "monolat/algebra/checks.hpp"
#include "monolat/algebra/finite_algebra.hpp"

namespace monolat::gen {

/// Lattice with meet/join read off a partial order given as leq[a*n+b].
/// Returns nullopt if some pair lacks a meet or join.
inline std::optional<FiniteAlgebra> lattice_from_order(std::size_t n, const std::vector<bool>& leq, std::string name = {}) {
  auto le = [&](Elem a, Elem b) { return leq[a * n + b]; };
  auto bound = [&](Elem a, Elem b, bool lower) -> std::optional<Elem> {
    std::optional<Elem> best;
    for (Elem c = 0; c < n; ++c) {
      bool is_bound = lower ? (le(c, a) && le(c, b)) : (le(a, c) && le(b, c));
      if (!is_bound) continue;
      bool extreme = true;
      for (Elem d = 0; d < n && extreme; ++d) {
        bool d_bound = lower ? (le(d, a) && le(d, b)) : (le(a, d) && le(b, d));
        if (d_bound) extreme = lower ? le(d, c) : le(c, d);
      }
      if (extreme) best = c;
    }
    return best;
  };
  Operation meet{"and", 2, std::vector<Elem>(n * n)}, join{"or", 2, std::vector<Elem>(n * n)};
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      auto m = bound(a, b, true), j = bound(a, b, false);
      if (!m || !j) return std::nullopt;
      meet.table[a * n + b] = *m;
      join.table[a * n + b] = *j;
    }
  return FiniteAlgebra(n, {meet, join}, std::move(name));
}

/// The n-element chain 0 < 1 < ... < n-1.
inline FiniteAlgebra chain(std::size_t n) {
  return FiniteAlgebra(n,
                       {make_binary("and", n, [](Elem a, Elem b) { return std::min(a, b); }),
                        make_binary("or", n, [](Elem a, Elem b) { return std::max(a, b); })},
                       "C" + std::to_string(n));
}

/// Chains of sizes 1..max_n.
inline std::vector<FiniteAlgebra> chains(std::size_t max_n) {
  std::vector<FiniteAlgebra> out;
  for (std::size_t n = 1; n <= max_n; ++n) out.push_back(chain(n));
  return out;
}

/// The permutation `perm` transported across A: perm maps A's elements to
/// the new indices.
inline FiniteAlgebra permute(const FiniteAlgebra& A, const std::vector<Elem>& perm) {
  const std::size_t n = A.size();
  std::vector<Elem> inv(n);
  for (Elem a = 0; a < n; ++a) inv[perm[a]] = a;
  std::vector<Operation> ops;
  for (const auto& op : A.operations()) {
    Operation p{op.name, op.arity, std::vector<Elem>(op.table.size())};
    std::size_t index = 0;
    std::vector<Elem> args(op.arity);
    for_each_tuple(n, op.arity, [&](std::span<const Elem> t) {
      for (std::size_t i = 0; i < t.size(); ++i) args[i] = inv[t[i]];
      p.table[index++] = perm[A.apply(op, args)];
      return true;
    });
    ops.push_back(std::move(p));
  }
  return FiniteAlgebra(n, std::move(ops), A.name());
}

/// Brute-force isomorphism test over all n! bijections.
inline bool is_isomorphic(const FiniteAlgebra& A, const FiniteAlgebra& B) {
  if (A.size() != B.size() || A.operations().size() != B.operations().size()) return false;
  if (A.size() > 8) throw AlgebraError("isomorphism test limited to 8 elements");
  std::vector<Elem> perm(A.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (permute(A, perm) == B) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// All lattices of size n up to isomorphism, labelled so that a ≤ b implies
/// a ≤ b as integers (0 is the bottom, n-1 the top).
inline std::vector<FiniteAlgebra> lattices_of_size(std::size_t n) {
  if (n == 0) return {};
  if (n > 6) throw AlgebraError("lattice enumeration limited to 6 elements");
  std::vector<std::pair<Elem, Elem>> free_pairs;
  for (Elem a = 1; a + 1 < n; ++a)
    for (Elem b = a + 1; b + 1 < n; ++b) free_pairs.emplace_back(a, b);
  std::vector<FiniteAlgebra> out;
  for (std::uint32_t mask = 0; mask < (1u << free_pairs.size()); ++mask) {
    std::vector<bool> leq(n * n, false);
    for (Elem a = 0; a < n; ++a) {
      leq[a * n + a] = true;
      leq[0 * n + a] = true;
      leq[a * n + (n - 1)] = true;
    }
    for (std::size_t k = 0; k < free_pairs.size(); ++k)
      if (mask & (1u << k)) leq[free_pairs[k].first * n + free_pairs[k].second] = true;
    bool transitive = true;
    for (Elem a = 0; a < n && transitive; ++a)
      for (Elem b = 0; b < n && transitive; ++b)
        for (Elem c = 0; c < n && transitive; ++c)
          if (leq[a * n + b] && leq[b * n + c] && !leq[a * n + c]) transitive = false;
    if (!transitive) continue;
    auto L = lattice_from_order(n, leq);
    if (!L) continue;
    if (std::any_of(out.begin(), out.end(), [&](const FiniteAlgebra& M) { return is_isomorphic(*L, M); })) continue;
    L->set_name("L" + std::to_string(n) + "#" + std::to_string(out.size()));
    out.push_back(std::move(*L));
  }
  return out;
}

/// All lattices of sizes 1..max_n up to isomorphism.
inline std::vector<FiniteAlgebra> lattices(std::size_t max_n) {
  std::vector<FiniteAlgebra> out;
  for (std::size_t n = 1; n <= max_n; ++n)
    for (auto& L : lattices_of_size(n)) out.push_back(std::move(L));
  return out;
}

/// The four-element lattice 0 < a, b < 1 with a, b incomparable (a = 1, b = 2).
inline FiniteAlgebra diamond_lattice() {
  std::vector<bool> leq(16, false);
  for (Elem a = 0; a < 4; ++a) leq[a * 4 + a] = leq[0 * 4 + a] = leq[a * 4 + 3] = true;
  auto L = lattice_from_order(4, leq, "M2");
  return std::move(*L);
}

/// Three-element Łukasiewicz chain 0 < ½ < 1 (indices 0, 1, 2), f = 0, e = 1.
inline FiniteAlgebra lukasiewicz3() {
  auto clamp = [](int v) { return static_cast<Elem>(std::clamp(v, 0, 2)); };
  return FiniteAlgebra(3,
                       {make_binary("and", 3, [](Elem a, Elem b) { return std::min(a, b); }),
                        make_binary("or", 3, [](Elem a, Elem b) { return std::max(a, b); }),
                        make_binary("mul", 3, [&](Elem a, Elem b) { return clamp(int(a) + int(b) - 2); }),
                        make_binary("imp", 3, [&](Elem a, Elem b) { return clamp(2 - int(a) + int(b)); }),
                        make_constant("f", 0), make_constant("e", 2)},
                       "Ł3", {"0", "½", "1"});
}

/// Two-element Boolean algebra with · = ∧, f = 0, e = 1.
inline FiniteAlgebra boolean2() {
  return FiniteAlgebra(2,
                       {make_binary("and", 2, [](Elem a, Elem b) { return a & b; }),
                        make_binary("or", 2, [](Elem a, Elem b) { return a | b; }),
                        make_binary("mul", 2, [](Elem a, Elem b) { return a & b; }),
                        make_binary("imp", 2, [](Elem a, Elem b) { return (1 - a) | b; }), make_constant("f", 0),
                        make_constant("e", 1)},
                       "B2");
}

/// Every FL_e-algebra of size n up to isomorphism (optionally restricted to
/// a variant). Lattices come from lattices_of_size; · ranges over all
/// commutative tables with some unit e; → is the residuum when it exists;
/// f ranges over all elements.
inline std::vector<FiniteAlgebra> fle_algebras_of_size(std::size_t n, FleVariant variant = FleVariant::Plain) {
  if (n > 4) throw AlgebraError("FL_e enumeration limited to 4 elements");
  std::vector<FiniteAlgebra> out;
  for (const auto& L : lattices_of_size(n)) {
    for (Elem e = 0; e < n; ++e) {
      std::vector<std::pair<Elem, Elem>> cells;
      for (Elem a = 0; a < n; ++a)
        for (Elem b = a; b < n; ++b)
          if (a != e && b != e) cells.emplace_back(a, b);
      std::vector<Elem> digits(cells.size(), 0);
      while (true) {
        std::vector<Elem> mul(n * n);
        for (Elem a = 0; a < n; ++a) mul[a * n + e] = mul[e * n + a] = a;
        for (std::size_t k = 0; k < cells.size(); ++k)
          mul[cells[k].first * n + cells[k].second] = mul[cells[k].second * n + cells[k].first] = digits[k];
        bool assoc = true;
        for (Elem a = 0; a < n && assoc; ++a)
          for (Elem b = 0; b < n && assoc; ++b)
            for (Elem c = 0; c < n && assoc; ++c) assoc = mul[mul[a * n + b] * n + c] == mul[a * n + mul[b * n + c]];
        std::optional<std::vector<Elem>> imp;
        if (assoc) {
          imp.emplace(n * n);
          for (Elem a = 0; a < n && imp; ++a)
            for (Elem b = 0; b < n && imp; ++b) {
              // a→b = greatest c with a·c ≤ b
              std::optional<Elem> best;
              for (Elem c = 0; c < n; ++c)
                if (L.leq(mul[a * n + c], b) && (!best || L.leq(*best, c))) best = c;
              bool greatest = best.has_value();
              for (Elem c = 0; c < n && greatest; ++c)
                if (L.leq(mul[a * n + c], b)) greatest = L.leq(c, *best);
              if (greatest) (*imp)[a * n + b] = *best;
              else imp.reset();
            }
        }
        if (imp)
          for (Elem f = 0; f < n; ++f) {
            std::vector<Operation> ops = L.operations();
            ops.push_back(Operation{"mul", 2, mul});
            ops.push_back(Operation{"imp", 2, *imp});
            ops.push_back(make_constant("f", f));
            ops.push_back(make_constant("e", e));
            FiniteAlgebra A(n, std::move(ops));
            if (!check_fle(A, FleVariant::Plain).ok()) continue;
            if (variant != FleVariant::Plain && !check_fle(A, variant).ok()) continue;
            if (std::any_of(out.begin(), out.end(), [&](const FiniteAlgebra& B) { return is_isomorphic(A, B); })) continue;
            out.push_back(std::move(A));
          }
        std::size_t i = digits.size();
        while (i > 0 && ++digits[i - 1] == n) digits[--i] = 0;
        if (i == 0) break;
      }
    }
  }
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k].set_name(std::string("FLe") + (variant == FleVariant::Plain ? "" : to_string(variant)) + std::to_string(n) + "#" +
                    std::to_string(k));
  return out;
}

inline std::vector<FiniteAlgebra> fle_algebras(std::size_t max_n, FleVariant variant = FleVariant::Plain) {
  std::vector<FiniteAlgebra> out;
  for (std::size_t n = 1; n <= max_n; ++n)
    for (auto& A : fle_algebras_of_size(n, variant)) out.push_back(std::move(A));
  return out;
}

}  // namespace monolat::gen
