#pragma once

#include <string>
#include <vector>

#include "monolat/algebra/checks.hpp"
#include "monolat/algebra/modal.hpp"
#include "monolat/algebra/semantics.hpp"

namespace monolat {

/// A -f1-> B1 -g1-> C and A -f2-> B2 -g2-> C, maps as element tables.
struct VFormation {
  FiniteAlgebra A, B1, B2, C;
  std::vector<Elem> f1, f2, g1, g2;
};

namespace detail {

inline void check_map_shape(const FiniteAlgebra& from, const FiniteAlgebra& to, const std::vector<Elem>& h,
                            const std::string& name) {
  if (h.size() != from.size()) throw AlgebraError("map " + name + " has the wrong number of entries");
  for (Elem v : h)
    if (v >= to.size()) throw AlgebraError("map " + name + " has an out-of-range entry");
  for (const auto& op : from.operations()) {
    const Operation* other = to.find(op.name);
    if (!other) throw AlgebraError("map " + name + ": target lacks operation '" + op.name + "'");
    if (other->arity != op.arity) throw AlgebraError("map " + name + ": arity mismatch for '" + op.name + "'");
  }
}

}  // namespace detail

/// First tuple (operation arguments) where h fails to commute with `op`, if any.
inline std::optional<std::pair<std::string, std::vector<Elem>>> homomorphism_failure(const FiniteAlgebra& from,
                                                                                     const FiniteAlgebra& to,
                                                                                     const std::vector<Elem>& h) {
  for (const auto& op : from.operations()) {
    const Operation& target = *to.find(op.name);
    std::vector<Elem> image(op.arity), witness;
    bool ok = for_each_tuple(from.size(), op.arity, [&](std::span<const Elem> t) {
      for (std::size_t i = 0; i < t.size(); ++i) image[i] = h[t[i]];
      if (h[from.apply(op, t)] == to.apply(target, image)) return true;
      witness.assign(t.begin(), t.end());
      return false;
    });
    if (!ok) return std::make_pair(op.name, witness);
  }
  return std::nullopt;
}

inline std::optional<std::pair<Elem, Elem>> injectivity_failure(const std::vector<Elem>& h) {
  for (Elem a = 0; a < h.size(); ++a)
    for (Elem b = a + 1; b < h.size(); ++b)
      if (h[a] == h[b]) return std::make_pair(a, b);
  return std::nullopt;
}

/// Checks that the four maps are embeddings, that the square commutes, and
/// the superamalgamation condition for both orders. Law names: "f1 hom[op]",
/// "f1 injective", ..., "commutes", "superamalgam 1<=2", "superamalgam 2<=1".
/// Only the first failure per law is reported.
inline CheckReport is_superamalgam(const VFormation& V) {
  detail::check_map_shape(V.A, V.B1, V.f1, "f1");
  detail::check_map_shape(V.A, V.B2, V.f2, "f2");
  detail::check_map_shape(V.B1, V.C, V.g1, "g1");
  detail::check_map_shape(V.B2, V.C, V.g2, "g2");

  CheckReport r;
  auto embedding = [&](const FiniteAlgebra& from, const FiniteAlgebra& to, const std::vector<Elem>& h, const std::string& n) {
    if (auto bad = homomorphism_failure(from, to, h)) r.violations.push_back({n + " hom[" + bad->first + "]", bad->second});
    if (auto bad = injectivity_failure(h)) r.violations.push_back({n + " injective", {bad->first, bad->second}});
  };
  embedding(V.A, V.B1, V.f1, "f1");
  embedding(V.A, V.B2, V.f2, "f2");
  embedding(V.B1, V.C, V.g1, "g1");
  embedding(V.B2, V.C, V.g2, "g2");
  for (Elem a = 0; a < V.A.size(); ++a)
    if (V.g1[V.f1[a]] != V.g2[V.f2[a]]) {
      r.violations.push_back({"commutes", {a}});
      break;
    }

  // g_i(b_i) <= g_j(b_j) must be witnessed by some a with
  // g_i(b_i) <= g_i f_i(a) = g_j f_j(a) <= g_j(b_j).
  auto condition = [&](bool one_below_two) {
    for (Elem b1 = 0; b1 < V.B1.size(); ++b1)
      for (Elem b2 = 0; b2 < V.B2.size(); ++b2) {
        Elem c1 = V.g1[b1], c2 = V.g2[b2];
        Elem lo = one_below_two ? c1 : c2, hi = one_below_two ? c2 : c1;
        if (!V.C.leq(lo, hi)) continue;
        bool found = false;
        for (Elem a = 0; a < V.A.size() && !found; ++a) {
          Elem x = V.g1[V.f1[a]], y = V.g2[V.f2[a]];
          found = x == y && V.C.leq(lo, x) && V.C.leq(x, hi);
        }
        if (!found) {
          r.violations.push_back({one_below_two ? "superamalgam 1<=2" : "superamalgam 2<=1", {b1, b2}});
          return;
        }
      }
  };
  condition(true);
  condition(false);
  return r;
}

enum class SearchStatus { Found, NotFound, BudgetExceeded };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::NotFound: return "not-found";
    case SearchStatus::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

struct EmbeddingResult {
  SearchStatus status = SearchStatus::NotFound;
  std::size_t base = 0;    ///< index into the supplied bases
  std::size_t worlds = 0;
  std::vector<Elem> map;   ///< element of M -> encoded function
  std::uint64_t nodes = 0;
};

namespace detail {

/// Backtracking search for an injective map M -> T preserving every
/// operation and both modalities. Each constraint is checked as soon as all
/// elements it mentions are assigned.
class EmbeddingSearch {
 public:
  EmbeddingSearch(const ModalExpansion& M, const ModalExpansion& T, std::uint64_t& nodes, std::uint64_t budget)
      : M_(M), T_(T), nodes_(nodes), budget_(budget) {
    const FiniteAlgebra& A = M.base();
    buckets_.resize(A.size());
    for (std::size_t k = 0; k < A.operations().size(); ++k) {
      const Operation& op = A.operations()[k];
      const Operation* target = T.base().find(op.name);
      if (!target || target->arity != op.arity) throw AlgebraError("target lacks operation '" + op.name + "'");
      targets_.push_back(target);
      std::size_t index = 0;
      for_each_tuple(A.size(), op.arity, [&](std::span<const Elem> t) {
        Constraint c{k, std::vector<Elem>(t.begin(), t.end()), op.table[index++]};
        Elem last = c.result;
        for (Elem a : c.args) last = std::max(last, a);
        buckets_[last].push_back(std::move(c));
        return true;
      });
    }
  }

  SearchStatus run(std::vector<Elem>& map) {
    map_.assign(M_.size(), 0);
    used_.assign(T_.size(), false);
    SearchStatus s = extend(0);
    if (s == SearchStatus::Found) map = map_;
    return s;
  }

 private:
  struct Constraint {
    std::size_t op;
    std::vector<Elem> args;
    Elem result;
  };

  bool consistent(Elem k) const {
    std::vector<Elem> image;
    for (const auto& c : buckets_[k]) {
      image.clear();
      for (Elem a : c.args) image.push_back(map_[a]);
      if (T_.base().apply(*targets_[c.op], image) != map_[c.result]) return false;
    }
    for (Elem a = 0; a <= k; ++a) {
      Elem b = M_.box(a), d = M_.diamond(a);
      if (b <= k && (a == k || b == k) && T_.box(map_[a]) != map_[b]) return false;
      if (d <= k && (a == k || d == k) && T_.diamond(map_[a]) != map_[d]) return false;
    }
    return true;
  }

  SearchStatus extend(Elem k) {
    if (k == M_.size()) return SearchStatus::Found;
    bool exhausted = false;
    for (Elem t = 0; t < T_.size(); ++t) {
      if (used_[t]) continue;
      if (++nodes_ > budget_) return SearchStatus::BudgetExceeded;
      map_[k] = t;
      used_[t] = true;
      if (consistent(k)) {
        SearchStatus s = extend(k + 1);
        if (s == SearchStatus::Found) return s;
        if (s == SearchStatus::BudgetExceeded) exhausted = true;
      }
      used_[t] = false;
      if (exhausted) return SearchStatus::BudgetExceeded;
    }
    return SearchStatus::NotFound;
  }

  const ModalExpansion& M_;
  const ModalExpansion& T_;
  std::uint64_t& nodes_;
  std::uint64_t budget_;
  std::vector<const Operation*> targets_;
  std::vector<std::vector<Constraint>> buckets_;
  std::vector<Elem> map_;
  std::vector<bool> used_;
};

}  // namespace detail

/// Tries full_functional(B, w) for w = 1..max_w and each base B in order;
/// returns the first embedding found. Not-found is relative to these bounds.
inline EmbeddingResult search_functional_embedding(const ModalExpansion& M, const std::vector<FiniteAlgebra>& bases,
                                                   std::size_t max_w, std::uint64_t budget = 50'000'000) {
  EmbeddingResult result;
  bool exhausted = false;
  for (std::size_t w = 1; w <= max_w; ++w)
    for (std::size_t b = 0; b < bases.size(); ++b) {
      bool compatible = true;
      for (const auto& op : M.base().operations()) {
        const Operation* t = bases[b].find(op.name);
        compatible = compatible && t && t->arity == op.arity;
      }
      if (!compatible || checked_power(bases[b].size(), static_cast<unsigned>(w), SIZE_MAX) < M.size()) continue;
      FullFunctional F = full_functional(bases[b], w);
      detail::EmbeddingSearch search(M, F.expansion, result.nodes, budget);
      std::vector<Elem> map;
      SearchStatus s = search.run(map);
      if (s == SearchStatus::Found) {
        result.status = s;
        result.base = b;
        result.worlds = w;
        result.map = std::move(map);
        return result;
      }
      if (s == SearchStatus::BudgetExceeded) {
        exhausted = true;
        break;
      }
    }
  result.status = exhausted ? SearchStatus::BudgetExceeded : SearchStatus::NotFound;
  return result;
}

}  // namespace monolat
