#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "monolat/syntax/text.hpp"
#include "monolat/syntax/translate.hpp"

namespace monolat {

/// Finite multiset of formulas, kept as a sorted vector.
using Multiset = std::vector<FoFormula>;

namespace ms {

inline Multiset sorted(Multiset m) {
  std::sort(m.begin(), m.end());
  return m;
}

inline Multiset plus(const Multiset& a, const Multiset& b) {
  Multiset out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline Multiset plus(const Multiset& a, const FoFormula& f) { return plus(a, Multiset{f}); }

inline bool contains(const Multiset& a, const FoFormula& f) { return std::binary_search(a.begin(), a.end(), f); }

inline bool includes(const Multiset& a, const Multiset& b) { return std::includes(a.begin(), a.end(), b.begin(), b.end()); }

/// a minus b, or nullopt when b is not a sub-multiset of a.
inline std::optional<Multiset> minus(const Multiset& a, const Multiset& b) {
  if (!includes(a, b)) return std::nullopt;
  Multiset out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::optional<Multiset> minus(const Multiset& a, const FoFormula& f) { return minus(a, Multiset{f}); }

/// Every sub-multiset of `a`, each exactly once, in a fixed order.
inline std::vector<Multiset> submultisets(const Multiset& a) {
  std::vector<std::pair<FoFormula, std::size_t>> groups;
  for (const auto& f : a) {
    if (!groups.empty() && groups.back().first == f) ++groups.back().second;
    else groups.emplace_back(f, 1);
  }
  std::vector<Multiset> out{Multiset{}};
  for (const auto& [f, count] : groups) {
    std::vector<Multiset> next;
    for (const auto& base : out)
      for (std::size_t k = 0; k <= count; ++k) {
        Multiset m = base;
        m.insert(m.end(), k, f);
        next.push_back(std::move(m));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace ms

/// Γ ⇒ Δ with a multiset antecedent and at most one succedent formula.
struct Sequent {
  Multiset antecedent;
  std::optional<FoFormula> succedent;

  Sequent() = default;
  Sequent(Multiset gamma, std::optional<FoFormula> delta)
      : antecedent(ms::sorted(std::move(gamma))), succedent(std::move(delta)) {}

  std::size_t size() const {
    std::size_t n = succedent ? succedent->size() : 0;
    for (const auto& f : antecedent) n += f.size();
    return n;
  }

  friend bool operator==(const Sequent&, const Sequent&) = default;
  friend auto operator<=>(const Sequent& a, const Sequent& b) {
    if (auto c = a.antecedent <=> b.antecedent; c != 0) return c;
    return a.succedent <=> b.succedent;
  }
};

inline FoFormula prod(const Multiset& gamma) {
  if (gamma.empty()) return FoFormula::unit();
  FoFormula out = gamma.front();
  for (std::size_t i = 1; i < gamma.size(); ++i) out = fuse(out, gamma[i]);
  return out;
}

inline FoFormula sum(const std::optional<FoFormula>& delta) { return delta ? *delta : FoFormula::falsum(); }

inline std::set<Variable> free_vars(const Multiset& m) {
  std::set<Variable> out;
  for (const auto& f : m) out.merge(free_vars(f));
  return out;
}

inline std::set<Variable> free_vars(const Sequent& s) {
  std::set<Variable> out = free_vars(s.antecedent);
  if (s.succedent) out.merge(free_vars(*s.succedent));
  return out;
}

inline std::set<Variable> occurring_vars(const Sequent& s) {
  std::set<Variable> out;
  for (const auto& f : s.antecedent) out.merge(occurring_vars(f));
  if (s.succedent) out.merge(occurring_vars(*s.succedent));
  return out;
}

inline bool is_one_variable(const Sequent& s) {
  return std::all_of(s.antecedent.begin(), s.antecedent.end(), [](const auto& f) { return is_one_variable(f); }) &&
         (!s.succedent || is_one_variable(*s.succedent));
}

inline std::string to_string(const Multiset& m, Notation n = Notation::Unicode) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += ", ";
    out += to_string(m[i], n);
  }
  return out;
}

inline std::string to_string(const Sequent& s, Notation n = Notation::Unicode) {
  std::string out = to_string(s.antecedent, n);
  if (!out.empty()) out += ' ';
  out += n == Notation::Unicode ? "⇒" : "|-";
  if (s.succedent) out += ' ' + to_string(*s.succedent, n);
  return out;
}

/// Parses `Γ |- Δ` (also `=>`, `⇒`, `⊢`), formulas separated by commas.
inline Sequent parse_sequent(std::string_view text) {
  FormulaParser<FoFormula> parser(text);
  Multiset gamma;
  if (parser.peek().kind != Tok::Turnstile) {
    gamma.push_back(parser.parse_formula());
    while (parser.accept(Tok::Comma)) gamma.push_back(parser.parse_formula());
  }
  parser.expect(Tok::Turnstile, "'|-' between antecedent and succedent");
  std::optional<FoFormula> delta;
  if (parser.peek().kind != Tok::End) {
    delta = parser.parse_formula();
    if (parser.peek().kind == Tok::Comma)
      throw SyntaxError("a sequent has at most one succedent formula", parser.peek().pos);
  }
  parser.expect_end();
  return Sequent(std::move(gamma), std::move(delta));
}

}  // namespace monolat
