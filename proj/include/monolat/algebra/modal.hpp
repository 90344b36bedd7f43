#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "monolat/algebra/checks.hpp"
#include "monolat/algebra/finite_algebra.hpp"

namespace monolat {

/// A finite algebra with unary box and diamond tables.
class ModalExpansion {
 public:
  ModalExpansion(FiniteAlgebra base, std::vector<Elem> box, std::vector<Elem> diamond)
      : base_(std::move(base)), box_(std::move(box)), diamond_(std::move(diamond)) {
    const std::size_t n = base_.size();
    if (box_.size() != n || diamond_.size() != n) throw AlgebraError("modal tables must have one entry per element");
    for (std::size_t i = 0; i < n; ++i)
      if (box_[i] >= n || diamond_[i] >= n) throw AlgebraError("modal table entry out of range");
  }

  const FiniteAlgebra& base() const { return base_; }
  std::size_t size() const { return base_.size(); }
  Elem box(Elem a) const { return box_[a]; }
  Elem diamond(Elem a) const { return diamond_[a]; }
  const std::vector<Elem>& box_table() const { return box_; }
  const std::vector<Elem>& diamond_table() const { return diamond_; }

  friend bool operator==(const ModalExpansion& a, const ModalExpansion& b) {
    return a.base_ == b.base_ && a.box_ == b.box_ && a.diamond_ == b.diamond_;
  }

 private:
  FiniteAlgebra base_;
  std::vector<Elem> box_;
  std::vector<Elem> diamond_;
};

inline ModalExpansion identity_modalities(const FiniteAlgebra& A) {
  std::vector<Elem> id(A.size());
  for (Elem a = 0; a < A.size(); ++a) id[a] = a;
  return ModalExpansion(A, id, id);
}

struct AxiomResult {
  std::string name;
  bool passed = true;
  bool derived = false;  ///< follows from the primitive axioms
  std::vector<Elem> witness;
};

struct MAxiomReport {
  std::vector<AxiomResult> axioms;
  bool fle_base = false;  ///< base passed check_fle, so L6 was tested

  bool primitive_ok() const { return all_of(false); }
  bool derived_ok() const { return all_of(true); }
  bool ok() const { return primitive_ok() && derived_ok(); }
  const AxiomResult* find(const std::string& name) const {
    for (const auto& a : axioms)
      if (a.name == name) return &a;
    return nullptr;
  }
  std::vector<const AxiomResult*> failures() const {
    std::vector<const AxiomResult*> out;
    for (const auto& a : axioms)
      if (!a.passed) out.push_back(&a);
    return out;
  }

 private:
  bool all_of(bool derived) const {
    return std::all_of(axioms.begin(), axioms.end(), [&](const AxiomResult& a) { return a.derived != derived || a.passed; });
  }
};

namespace detail {

template <class Pred>
void axiom(MAxiomReport& r, std::string name, bool derived, std::size_t n, unsigned arity, Pred&& holds) {
  CheckReport tmp;
  check_law(tmp, name, n, arity, std::forward<Pred>(holds));
  AxiomResult res{std::move(name), tmp.ok(), derived, {}};
  if (!tmp.ok()) res.witness = tmp.violations.front().witness;
  r.axioms.push_back(std::move(res));
}

/// ⋆(m x1, ..., m xk) fixed by m, i.e. m(⋆(m x̄)) = ⋆(m x̄).
inline bool star_law(const FiniteAlgebra& A, const Operation& op, const std::vector<Elem>& m, std::span<const Elem> t) {
  std::vector<Elem> args(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) args[i] = m[t[i]];
  Elem v = A.apply(op, args);
  return m[v] == v;
}

}  // namespace detail

/// Checks the primitive m-lattice axioms (L1-L3 for box and diamond and the
/// box-fixpoint law per operation) and the derived ones (L4, L5, the diamond
/// fixpoint law, and on FL_e bases L6). Axiom names: L1_box ... L3_dia,
/// star_box[op], L4_box, L4_dia, L5_box, L5_dia, star_dia[op], L6_box, L6_dia.
inline MAxiomReport check_m_axioms(const ModalExpansion& M) {
  const FiniteAlgebra& A = M.base();
  const std::size_t n = A.size();
  const auto& bx = M.box_table();
  const auto& dm = M.diamond_table();
  MAxiomReport r;
  using detail::axiom;

  axiom(r, "L1_box", false, n, 1, [&](auto t) { return A.meet(bx[t[0]], t[0]) == bx[t[0]]; });
  axiom(r, "L2_box", false, n, 2, [&](auto t) { return bx[A.meet(t[0], t[1])] == A.meet(bx[t[0]], bx[t[1]]); });
  axiom(r, "L3_box", false, n, 1, [&](auto t) { return bx[dm[t[0]]] == dm[t[0]]; });
  axiom(r, "L1_dia", false, n, 1, [&](auto t) { return A.join(dm[t[0]], t[0]) == dm[t[0]]; });
  axiom(r, "L2_dia", false, n, 2, [&](auto t) { return dm[A.join(t[0], t[1])] == A.join(dm[t[0]], dm[t[1]]); });
  axiom(r, "L3_dia", false, n, 1, [&](auto t) { return dm[bx[t[0]]] == bx[t[0]]; });
  for (const auto& op : A.operations())
    axiom(r, "star_box[" + op.name + "]", false, n, op.arity, [&](auto t) { return detail::star_law(A, op, bx, t); });

  axiom(r, "L4_box", true, n, 1, [&](auto t) { return bx[bx[t[0]]] == bx[t[0]]; });
  axiom(r, "L4_dia", true, n, 1, [&](auto t) { return dm[dm[t[0]]] == dm[t[0]]; });
  axiom(r, "L5_box", true, n, 2, [&](auto t) { return !A.leq(t[0], t[1]) || A.leq(bx[t[0]], bx[t[1]]); });
  axiom(r, "L5_dia", true, n, 2, [&](auto t) { return !A.leq(t[0], t[1]) || A.leq(dm[t[0]], dm[t[1]]); });
  for (const auto& op : A.operations())
    axiom(r, "star_dia[" + op.name + "]", true, n, op.arity, [&](auto t) { return detail::star_law(A, op, dm, t); });

  if (A.has_fle_signature() && check_lattice(A).ok() && check_fle(A).ok()) {
    r.fle_base = true;
    axiom(r, "L6_box", true, n, 2, [&](auto t) { return bx[A.imp(t[0], bx[t[1]])] == A.imp(dm[t[0]], bx[t[1]]); });
    axiom(r, "L6_dia", true, n, 2, [&](auto t) { return bx[A.imp(bx[t[0]], t[1])] == A.imp(bx[t[0]], bx[t[1]]); });
  }
  return r;
}

/// True iff `subset` is closed under every operation (constants included).
inline bool is_subuniverse(const FiniteAlgebra& A, const std::vector<Elem>& subset) {
  std::vector<bool> in(A.size(), false);
  for (Elem a : subset) {
    if (a >= A.size()) throw AlgebraError("subset element out of range");
    in[a] = true;
  }
  std::vector<Elem> members;
  for (Elem a = 0; a < A.size(); ++a)
    if (in[a]) members.push_back(a);
  for (const auto& op : A.operations()) {
    std::vector<Elem> args(op.arity);
    bool closed = for_each_tuple(members.size(), op.arity, [&](std::span<const Elem> idx) {
      for (std::size_t i = 0; i < idx.size(); ++i) args[i] = members[idx[i]];
      return in[A.apply(op, args)];
    });
    if (!closed) return false;
  }
  return true;
}

namespace detail {

inline std::vector<Elem> normalize_subset(const FiniteAlgebra& A, std::vector<Elem> s) {
  for (Elem a : s)
    if (a >= A.size()) throw AlgebraError("subset element out of range");
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

/// Greatest element of {b ∈ S | b ≤ a} (below) or least of {b ∈ S | a ≤ b}.
inline std::optional<Elem> bound_in(const FiniteAlgebra& A, const std::vector<Elem>& S, Elem a, bool below) {
  std::vector<Elem> cands;
  for (Elem b : S)
    if (below ? A.leq(b, a) : A.leq(a, b)) cands.push_back(b);
  for (Elem c : cands) {
    bool extreme = std::all_of(cands.begin(), cands.end(), [&](Elem d) { return below ? A.leq(d, c) : A.leq(c, d); });
    if (extreme) return c;
  }
  return std::nullopt;
}

}  // namespace detail

/// The box image, verified to equal the diamond image, to be a subuniverse,
/// and to induce both modalities as its max-below / min-above maps.
inline std::vector<Elem> box_image(const ModalExpansion& M) {
  const FiniteAlgebra& A = M.base();
  std::vector<Elem> img = M.box_table(), dimg = M.diamond_table();
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  std::sort(dimg.begin(), dimg.end());
  dimg.erase(std::unique(dimg.begin(), dimg.end()), dimg.end());
  if (img != dimg) throw AlgebraError("box image differs from diamond image");
  if (!is_subuniverse(A, img)) throw AlgebraError("box image is not closed under the operations");
  for (Elem a = 0; a < A.size(); ++a) {
    if (detail::bound_in(A, img, a, true) != std::optional<Elem>(M.box(a)))
      throw AlgebraError("box(" + A.label(a) + ") is not the greatest image element below it");
    if (detail::bound_in(A, img, a, false) != std::optional<Elem>(M.diamond(a)))
      throw AlgebraError("diamond(" + A.label(a) + ") is not the least image element above it");
  }
  return img;
}

inline bool is_relatively_complete(const FiniteAlgebra& A, std::vector<Elem> A0) {
  A0 = detail::normalize_subset(A, std::move(A0));
  if (!is_subuniverse(A, A0)) throw AlgebraError("subset is not closed under the operations");
  for (Elem a = 0; a < A.size(); ++a)
    if (!detail::bound_in(A, A0, a, true) || !detail::bound_in(A, A0, a, false)) return false;
  return true;
}

inline ModalExpansion adjoint_modalities(const FiniteAlgebra& A, std::vector<Elem> A0) {
  A0 = detail::normalize_subset(A, std::move(A0));
  if (!is_relatively_complete(A, A0)) throw AlgebraError("subuniverse is not relatively complete");
  std::vector<Elem> bx(A.size()), dm(A.size());
  for (Elem a = 0; a < A.size(); ++a) {
    bx[a] = *detail::bound_in(A, A0, a, true);
    dm[a] = *detail::bound_in(A, A0, a, false);
  }
  return ModalExpansion(A, std::move(bx), std::move(dm));
}

/// Modal expansion -> (A, box image) -> adjoint modalities; true iff the
/// original tables come back.
inline bool correspondence_roundtrip(const ModalExpansion& M) {
  if (!check_m_axioms(M).primitive_ok()) throw AlgebraError("input violates the m-lattice axioms");
  return adjoint_modalities(M.base(), box_image(M)) == M;
}

/// (A, A0) -> adjoint modalities -> box image; true iff A0 comes back.
inline bool correspondence_roundtrip(const FiniteAlgebra& A, std::vector<Elem> A0) {
  A0 = detail::normalize_subset(A, std::move(A0));
  return box_image(adjoint_modalities(A, A0)) == A0;
}

/// All subuniverses, each sorted, in lexicographic order of their sorted
/// element lists. The empty set is included when no constants exist.
inline std::vector<std::vector<Elem>> enumerate_subuniverses(const FiniteAlgebra& A) {
  const std::size_t n = A.size();
  if (n > 20) throw AlgebraError("too many elements for subuniverse enumeration");
  std::vector<std::vector<Elem>> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<Elem> s;
    for (Elem a = 0; a < n; ++a)
      if (mask & (1u << a)) s.push_back(a);
    if (is_subuniverse(A, s)) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Every modal expansion of A, one per relatively complete subuniverse.
inline std::vector<ModalExpansion> enumerate_modal_expansions(const FiniteAlgebra& A) {
  std::vector<ModalExpansion> out;
  for (auto& s : enumerate_subuniverses(A))
    if (!s.empty() && is_relatively_complete(A, s)) out.push_back(adjoint_modalities(A, s));
  return out;
}

}  // namespace monolat
