#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"
#include "monolat/algebra/modal.hpp"

namespace monolat {

/// Contents of an algebra file: the algebra and, when `box`/`diamond` are
/// present, its modal expansion.
struct AlgebraFile {
  FiniteAlgebra algebra;
  std::optional<ModalExpansion> modal;
};

namespace detail {

inline void flatten(const nlohmann::json& j, std::size_t n, unsigned depth, std::vector<Elem>& out, const std::string& op) {
  if (depth == 0) {
    if (!j.is_number_integer() || j.get<long long>() < 0) throw AlgebraError("operation '" + op + "': entries must be non-negative integers");
    out.push_back(static_cast<Elem>(j.get<long long>()));
    return;
  }
  if (!j.is_array() || j.size() != n) throw AlgebraError("operation '" + op + "': every nesting level needs " + std::to_string(n) + " entries");
  for (const auto& sub : j) flatten(sub, n, depth - 1, out, op);
}

inline unsigned nesting_depth(const nlohmann::json& j) {
  unsigned d = 0;
  const nlohmann::json* cur = &j;
  while (cur->is_array()) {
    ++d;
    if (cur->empty()) break;
    cur = &(*cur)[0];
  }
  return d;
}

inline nlohmann::json nest(const Operation& op, std::size_t n, std::size_t& index, unsigned depth) {
  if (depth == 0) return op.table[index++];
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < n; ++i) arr.push_back(nest(op, n, index, depth - 1));
  return arr;
}

inline std::vector<Elem> read_unary(const nlohmann::json& j, std::size_t n, const char* what) {
  std::vector<Elem> out;
  flatten(j, n, 1, out, what);
  return out;
}

}  // namespace detail

/// Parses the JSON algebra format: `size`, `ops` (name -> nested array,
/// arity = nesting depth), `consts` (name -> element), and optional `box`,
/// `diamond`, `name`, `labels`.
inline AlgebraFile algebra_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw AlgebraError("algebra file must hold a JSON object");
  if (!j.contains("size") || !j["size"].is_number_integer() || j["size"].get<long long>() <= 0)
    throw AlgebraError("algebra file needs a positive integer 'size'");
  const std::size_t n = j["size"].get<std::size_t>();
  std::vector<Operation> ops;
  if (j.contains("ops")) {
    if (!j["ops"].is_object()) throw AlgebraError("'ops' must be an object");
    for (const auto& [name, table] : j["ops"].items()) {
      unsigned arity = detail::nesting_depth(table);
      Operation op{name, arity, {}};
      detail::flatten(table, n, arity, op.table, name);
      ops.push_back(std::move(op));
    }
  }
  if (j.contains("consts")) {
    if (!j["consts"].is_object()) throw AlgebraError("'consts' must be an object");
    for (const auto& [name, value] : j["consts"].items()) {
      if (!value.is_number_integer() || value.get<long long>() < 0) throw AlgebraError("constant '" + name + "' must be an element index");
      ops.push_back(make_constant(name, value.get<Elem>()));
    }
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
  FiniteAlgebra A(n, std::move(ops), j.value("name", std::string{}), std::move(labels));
  AlgebraFile file{A, std::nullopt};
  if (j.contains("box") || j.contains("diamond")) {
    if (!j.contains("box") || !j.contains("diamond")) throw AlgebraError("'box' and 'diamond' must be given together");
    file.modal.emplace(A, detail::read_unary(j["box"], n, "box"), detail::read_unary(j["diamond"], n, "diamond"));
  }
  return file;
}

inline AlgebraFile parse_algebra(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw AlgebraError(std::string("malformed algebra JSON: ") + e.what());
  }
  return algebra_from_json(j);
}

inline AlgebraFile load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AlgebraError("cannot open algebra file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_algebra(ss.str());
}

inline nlohmann::json to_json(const FiniteAlgebra& A) {
  nlohmann::json j;
  if (!A.name().empty()) j["name"] = A.name();
  j["size"] = A.size();
  j["ops"] = nlohmann::json::object();
  j["consts"] = nlohmann::json::object();
  for (const auto& op : A.operations()) {
    if (op.arity == 0) {
      j["consts"][op.name] = op.table[0];
    } else {
      std::size_t index = 0;
      j["ops"][op.name] = detail::nest(op, A.size(), index, op.arity);
    }
  }
  if (!A.labels().empty()) j["labels"] = A.labels();
  return j;
}

inline nlohmann::json to_json(const ModalExpansion& M) {
  nlohmann::json j = to_json(M.base());
  j["box"] = M.box_table();
  j["diamond"] = M.diamond_table();
  return j;
}

}  // namespace monolat
