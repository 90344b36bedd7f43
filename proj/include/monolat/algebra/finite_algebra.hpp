#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace monolat {

/// Element of a finite universe {0, ..., n-1}.
using Elem = std::uint32_t;

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Canonical operation names of the substructural signature.
namespace opname {
inline constexpr std::string_view meet = "and";
inline constexpr std::string_view join = "or";
inline constexpr std::string_view mul = "mul";
inline constexpr std::string_view imp = "imp";
inline constexpr std::string_view f = "f";
inline constexpr std::string_view e = "e";

/// Maps accepted spellings onto the canonical names; unknown names are kept.
inline std::string canonical(std::string_view name) {
  if (name == "meet" || name == "/\\" || name == "∧") return std::string(meet);
  if (name == "join" || name == "\\/" || name == "∨") return std::string(join);
  if (name == "*" || name == "·" || name == "fusion") return std::string(mul);
  if (name == "->" || name == "→" || name == "residuum") return std::string(imp);
  return std::string(name);
}
}  // namespace opname

/// An operation table. Entries are stored row-major: the first argument is
/// the most significant digit of the index.
struct Operation {
  std::string name;
  unsigned arity = 0;
  std::vector<Elem> table;

  friend bool operator==(const Operation&, const Operation&) = default;
};

inline std::size_t checked_power(std::size_t base, unsigned exp, std::size_t limit = std::size_t{1} << 26) {
  std::size_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > limit / base) throw AlgebraError("table too large");
    r *= base;
  }
  return r;
}

/// Finite algebra given by operation tables over {0..n-1}. Meet and join are
/// mandatory; the lattice laws themselves are checked by check_lattice, not
/// assumed here.
class FiniteAlgebra {
 public:
  FiniteAlgebra(std::size_t size, std::vector<Operation> ops, std::string name = {},
                std::vector<std::string> labels = {})
      : size_(size), ops_(std::move(ops)), name_(std::move(name)), labels_(std::move(labels)) {
    if (size_ == 0) throw AlgebraError("algebra must have a nonempty universe");
    for (auto& op : ops_) {
      op.name = opname::canonical(op.name);
      if (op.table.size() != checked_power(size_, op.arity))
        throw AlgebraError("operation '" + op.name + "' has a table of the wrong size");
      for (Elem v : op.table)
        if (v >= size_) throw AlgebraError("operation '" + op.name + "' has an out-of-range entry");
    }
    for (std::size_t i = 0; i < ops_.size(); ++i)
      for (std::size_t j = i + 1; j < ops_.size(); ++j)
        if (ops_[i].name == ops_[j].name) throw AlgebraError("duplicate operation '" + ops_[i].name + "'");
    auto locate = [&](std::string_view n, unsigned arity) -> int {
      for (std::size_t i = 0; i < ops_.size(); ++i)
        if (ops_[i].name == n) {
          if (ops_[i].arity != arity) throw AlgebraError("operation '" + std::string(n) + "' has the wrong arity");
          return static_cast<int>(i);
        }
      return -1;
    };
    meet_ = locate(opname::meet, 2);
    join_ = locate(opname::join, 2);
    mul_ = locate(opname::mul, 2);
    imp_ = locate(opname::imp, 2);
    f_ = locate(opname::f, 0);
    e_ = locate(opname::e, 0);
    if (meet_ < 0 || join_ < 0) throw AlgebraError("algebra needs both 'and' and 'or' operations");
    if (!labels_.empty() && labels_.size() != size_) throw AlgebraError("label count does not match size");
  }

  std::size_t size() const { return size_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  const std::vector<Operation>& operations() const { return ops_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(Elem a) const { return labels_.empty() ? std::to_string(a) : labels_[a]; }

  const Operation* find(std::string_view name) const {
    std::string canon = opname::canonical(name);
    for (const auto& op : ops_)
      if (op.name == canon) return &op;
    return nullptr;
  }

  Elem apply(const Operation& op, std::span<const Elem> args) const {
    std::size_t index = 0;
    for (Elem a : args) index = index * size_ + a;
    return op.table[index];
  }

  Elem meet(Elem a, Elem b) const { return bin(meet_, a, b); }
  Elem join(Elem a, Elem b) const { return bin(join_, a, b); }
  bool leq(Elem a, Elem b) const { return meet(a, b) == a; }

  bool has_mul() const { return mul_ >= 0; }
  bool has_imp() const { return imp_ >= 0; }
  bool has_f() const { return f_ >= 0; }
  bool has_e() const { return e_ >= 0; }
  bool has_fle_signature() const { return has_mul() && has_imp() && has_f() && has_e(); }

  Elem mul(Elem a, Elem b) const { return bin(require(mul_, opname::mul), a, b); }
  Elem imp(Elem a, Elem b) const { return bin(require(imp_, opname::imp), a, b); }
  Elem f() const { return ops_[require(f_, opname::f)].table[0]; }
  Elem e() const { return ops_[require(e_, opname::e)].table[0]; }

  /// Least element in the derived order, if one exists.
  std::optional<Elem> bottom() const {
    for (Elem a = 0; a < size_; ++a) {
      bool least = true;
      for (Elem b = 0; b < size_ && least; ++b) least = leq(a, b);
      if (least) return a;
    }
    return std::nullopt;
  }
  std::optional<Elem> top() const {
    for (Elem a = 0; a < size_; ++a) {
      bool greatest = true;
      for (Elem b = 0; b < size_ && greatest; ++b) greatest = leq(b, a);
      if (greatest) return a;
    }
    return std::nullopt;
  }

  /// Same universe size and identical tables; names and labels are ignored.
  friend bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    if (a.size_ != b.size_ || a.ops_.size() != b.ops_.size()) return false;
    for (const auto& op : a.ops_) {
      const Operation* other = b.find(op.name);
      if (!other || other->arity != op.arity || other->table != op.table) return false;
    }
    return true;
  }

 private:
  Elem bin(int idx, Elem a, Elem b) const { return ops_[static_cast<std::size_t>(idx)].table[a * size_ + b]; }
  int require(int idx, std::string_view n) const {
    if (idx < 0) throw AlgebraError("algebra has no operation '" + std::string(n) + "'");
    return idx;
  }

  std::size_t size_;
  std::vector<Operation> ops_;
  std::string name_;
  std::vector<std::string> labels_;
  int meet_ = -1, join_ = -1, mul_ = -1, imp_ = -1, f_ = -1, e_ = -1;
};

/// Tabulates a binary function on {0..n-1}.
inline Operation make_binary(std::string name, std::size_t n, const std::function<Elem(Elem, Elem)>& fn) {
  Operation op{std::move(name), 2, std::vector<Elem>(n * n)};
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) op.table[a * n + b] = fn(a, b);
  return op;
}

inline Operation make_constant(std::string name, Elem value) { return Operation{std::move(name), 0, {value}}; }

/// Calls fn on every tuple in {0..n-1}^arity in lexicographic order; stops
/// early when fn returns false. Returns false iff stopped early.
template <class Fn>
bool for_each_tuple(std::size_t n, unsigned arity, Fn&& fn) {
  if (n == 0 && arity > 0) return true;
  std::vector<Elem> tuple(arity, 0);
  while (true) {
    if (!fn(std::span<const Elem>(tuple))) return false;
    int i = static_cast<int>(arity) - 1;
    while (i >= 0 && tuple[static_cast<std::size_t>(i)] + 1 == n) tuple[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return true;
    ++tuple[static_cast<std::size_t>(i)];
  }
}

}  // namespace monolat
