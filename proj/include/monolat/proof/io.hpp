#pragma once

#include <string>

#include "json.hpp"
#include "monolat/proof/derivation.hpp"

namespace monolat {

namespace detail {

inline void print_tree(const Derivation& d, Notation n, std::size_t indent, std::string& out) {
  out.append(indent, ' ');
  out += to_string(d.conclusion, n);
  out += "   [";
  out += to_string(d.rule, n);
  if (d.principal && d.rule != Rule::Id) out += ": " + to_string(*d.principal, n);
  if (d.term) out += (d.rule == Rule::ForallRight || d.rule == Rule::ExistsLeft ? ", y = " : ", t = ") + d.term->name();
  if (!d.context.empty() && (d.rule == Rule::Weakening || d.rule == Rule::Contraction))
    out += ", " + to_string(d.context, n);
  out += "]\n";
  for (const auto& p : d.premises) print_tree(p, n, indent + 2, out);
}

inline Variable parse_variable(const std::string& s) {
  if (s == "x") return Variable::x();
  std::string digits = s.size() > 1 && s[0] == 'x' ? s.substr(s[1] == '_' ? 2 : 1) : "";
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw ProofError("malformed variable '" + s + "'");
  return Variable::indexed(static_cast<std::uint32_t>(std::stoul(digits)));
}

}  // namespace detail

/// Indented tree, conclusion first, one node per line with its rule data.
inline std::string to_text(const Derivation& d, Notation n = Notation::Unicode) {
  std::string out;
  detail::print_tree(d, n, 0, out);
  return out;
}

inline nlohmann::json to_json(const Sequent& s) {
  nlohmann::json ant = nlohmann::json::array();
  for (const auto& f : s.antecedent) ant.push_back(to_string(f, Notation::Ascii));
  return {{"antecedent", ant}, {"succedent", s.succedent ? nlohmann::json(to_string(*s.succedent, Notation::Ascii)) : nlohmann::json()}};
}

inline nlohmann::json to_json(const Derivation& d) {
  nlohmann::json j;
  j["conclusion"] = to_json(d.conclusion);
  j["rule"] = to_string(d.rule, Notation::Ascii);
  if (d.principal) j["principal"] = to_string(*d.principal, Notation::Ascii);
  if (d.term) j["term"] = d.term->name();
  if (!d.context.empty()) {
    j["context"] = nlohmann::json::array();
    for (const auto& f : d.context) j["context"].push_back(to_string(f, Notation::Ascii));
  }
  j["premises"] = nlohmann::json::array();
  for (const auto& p : d.premises) j["premises"].push_back(to_json(p));
  return j;
}

inline Sequent sequent_from_json(const nlohmann::json& j) {
  try {
    Multiset ant;
    for (const auto& f : j.at("antecedent")) ant.push_back(parse_fo(f.get<std::string>()));
    std::optional<FoFormula> succ;
    if (j.contains("succedent") && !j["succedent"].is_null()) succ = parse_fo(j["succedent"].get<std::string>());
    return Sequent(std::move(ant), std::move(succ));
  } catch (const nlohmann::json::exception& e) {
    throw ProofError(std::string("malformed sequent JSON: ") + e.what());
  }
}

inline Derivation derivation_from_json(const nlohmann::json& j) {
  try {
    Derivation d;
    d.conclusion = sequent_from_json(j.at("conclusion"));
    d.rule = parse_rule(j.at("rule").get<std::string>());
    if (j.contains("principal")) d.principal = parse_fo(j["principal"].get<std::string>());
    if (j.contains("term")) d.term = detail::parse_variable(j["term"].get<std::string>());
    if (j.contains("context")) {
      for (const auto& f : j["context"]) d.context.push_back(parse_fo(f.get<std::string>()));
      d.context = ms::sorted(std::move(d.context));
    }
    if (j.contains("premises"))
      for (const auto& p : j["premises"]) d.premises.push_back(derivation_from_json(p));
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw ProofError(std::string("malformed derivation JSON: ") + e.what());
  }
}

inline Derivation parse_derivation(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ProofError(std::string("malformed derivation JSON: ") + e.what());
  }
  return derivation_from_json(j);
}

}  // namespace monolat
