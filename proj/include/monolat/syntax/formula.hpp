#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

namespace monolat {

/// Raised for lexical and grammatical errors and for violations of the
/// one-variable scope discipline. Carries the byte offset when known.
class SyntaxError : public std::runtime_error {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  explicit SyntaxError(const std::string& message, std::size_t position = npos)
      : std::runtime_error(position == npos ? message
                                            : message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Either the distinguished bound variable `x` or a free variable `x_i`.
class Variable {
 public:
  constexpr Variable() = default;

  static constexpr Variable x() { return Variable{}; }
  static constexpr Variable indexed(std::uint32_t i) {
    Variable v;
    v.code_ = i + 1;
    return v;
  }

  constexpr bool is_x() const { return code_ == 0; }
  /// Index i of x_i. Only meaningful when !is_x().
  constexpr std::uint32_t index() const { return code_ - 1; }

  constexpr auto operator<=>(const Variable&) const = default;

  std::string name() const { return is_x() ? "x" : "x" + std::to_string(index()); }

 private:
  std::uint32_t code_ = 0;
};

/// Propositional variable p_i.
struct PropVar {
  std::uint32_t index = 0;
  constexpr auto operator<=>(const PropVar&) const = default;
};

/// Unary atom P_i(v).
struct Predication {
  std::uint32_t predicate = 0;
  Variable var;
  constexpr auto operator<=>(const Predication&) const = default;
};

/// Node kinds shared by both syntaxes. `Universal`/`Existential` are the
/// modalities box/diamond in modal formulas and the quantifiers over x in
/// first-order formulas.
enum class Op : std::uint8_t { Leaf, False, Unit, And, Or, Mul, Imp, Universal, Existential };

constexpr bool is_binary(Op op) { return op == Op::And || op == Op::Or || op == Op::Mul || op == Op::Imp; }
constexpr bool is_unary(Op op) { return op == Op::Universal || op == Op::Existential; }

namespace detail {

inline std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

inline std::size_t leaf_hash(const PropVar& p) { return mix(0x51, p.index); }
inline std::size_t leaf_hash(const Predication& a) {
  return mix(mix(0x7a, a.predicate), a.var.is_x() ? 0 : a.var.index() + 1);
}

inline bool leaf_has_indexed(const PropVar&) { return false; }
inline bool leaf_has_indexed(const Predication& a) { return !a.var.is_x(); }

}  // namespace detail

/// Immutable formula tree with shared subterms. Structural equality and a
/// total structural order are provided; both are independent of sharing.
template <class LeafT>
class Formula {
 public:
  using Leaf = LeafT;
  static constexpr bool first_order = std::is_same_v<LeafT, Predication>;

  static Formula leaf(Leaf value) { return Formula(make(Op::Leaf, value, nullptr, nullptr)); }
  static Formula falsum() { return Formula(make(Op::False, Leaf{}, nullptr, nullptr)); }
  static Formula unit() { return Formula(make(Op::Unit, Leaf{}, nullptr, nullptr)); }

  static Formula binary(Op op, const Formula& lhs, const Formula& rhs) {
    if (!is_binary(op)) throw std::invalid_argument("Formula::binary: not a binary connective");
    return Formula(make(op, Leaf{}, lhs.node_, rhs.node_));
  }

  /// Quantifier / modality. For first-order formulas the body must not
  /// mention any x_i: no free variable may sit in the scope of a quantifier.
  static Formula unary(Op op, const Formula& body) {
    if (!is_unary(op)) throw std::invalid_argument("Formula::unary: not a quantifier or modality");
    if (body.node_->has_indexed)
      throw SyntaxError("free variable x_i in the scope of a quantifier: " + std::string(op_name(op)));
    return Formula(make(op, Leaf{}, body.node_, nullptr));
  }

  Op op() const { return node_->op; }
  const Leaf& atom() const { return node_->leaf; }
  Formula lhs() const { return Formula(node_->left); }
  Formula rhs() const { return Formula(node_->right); }
  /// Operand of a quantifier or modality.
  Formula body() const { return Formula(node_->left); }

  std::size_t size() const { return node_->size; }
  std::size_t hash() const { return node_->hash; }
  /// True iff some x_i occurs (always free, by the scope discipline).
  bool has_indexed_var() const { return node_->has_indexed; }

  friend bool operator==(const Formula& a, const Formula& b) { return compare(a.node_.get(), b.node_.get()) == 0; }
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
    return compare(a.node_.get(), b.node_.get()) <=> 0;
  }

  static const char* op_name(Op op) {
    switch (op) {
      case Op::Leaf: return "leaf";
      case Op::False: return "f";
      case Op::Unit: return "e";
      case Op::And: return "and";
      case Op::Or: return "or";
      case Op::Mul: return "mul";
      case Op::Imp: return "imp";
      case Op::Universal: return first_order ? "forall" : "box";
      case Op::Existential: return first_order ? "exists" : "diamond";
    }
    return "?";
  }

 private:
  struct Node {
    Op op;
    Leaf leaf;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
    std::size_t size;
    std::size_t hash;
    bool has_indexed;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static std::shared_ptr<const Node> make(Op op, Leaf leaf, std::shared_ptr<const Node> l,
                                          std::shared_ptr<const Node> r) {
    std::size_t size = 1;
    std::size_t h = detail::mix(0x1234, static_cast<std::size_t>(op));
    bool indexed = false;
    if (op == Op::Leaf) {
      h = detail::mix(h, detail::leaf_hash(leaf));
      indexed = detail::leaf_has_indexed(leaf);
    }
    if (l) {
      size += l->size;
      h = detail::mix(h, l->hash);
      indexed = indexed || l->has_indexed;
    }
    if (r) {
      size += r->size;
      h = detail::mix(h, r->hash);
      indexed = indexed || r->has_indexed;
    }
    return std::make_shared<const Node>(Node{op, leaf, std::move(l), std::move(r), size, h, indexed});
  }

  static int compare(const Node* a, const Node* b) {
    if (a == b) return 0;
    if (a->op != b->op) return a->op < b->op ? -1 : 1;
    if (a->op == Op::Leaf) {
      auto c = a->leaf <=> b->leaf;
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    if (a->size != b->size) return a->size < b->size ? -1 : 1;
    if (a->left) {
      int c = compare(a->left.get(), b->left.get());
      if (c != 0) return c;
    }
    if (a->right) return compare(a->right.get(), b->right.get());
    return 0;
  }

  std::shared_ptr<const Node> node_;
};

using ModalFormula = Formula<PropVar>;
using FoFormula = Formula<Predication>;

// Builders. Spelled out rather than operator overloads so that call sites read
// the same in both syntaxes.
template <class F> F falsum() { return F::falsum(); }
template <class F> F unit() { return F::unit(); }
template <class F> F conj(const F& a, const F& b) { return F::binary(Op::And, a, b); }
template <class F> F disj(const F& a, const F& b) { return F::binary(Op::Or, a, b); }
template <class F> F fuse(const F& a, const F& b) { return F::binary(Op::Mul, a, b); }
template <class F> F imp(const F& a, const F& b) { return F::binary(Op::Imp, a, b); }

inline ModalFormula p(std::uint32_t i) { return ModalFormula::leaf(PropVar{i}); }
inline ModalFormula box(const ModalFormula& a) { return ModalFormula::unary(Op::Universal, a); }
inline ModalFormula dia(const ModalFormula& a) { return ModalFormula::unary(Op::Existential, a); }

inline FoFormula P(std::uint32_t i, Variable v = Variable::x()) { return FoFormula::leaf(Predication{i, v}); }
inline FoFormula forall(const FoFormula& body) { return FoFormula::unary(Op::Universal, body); }
inline FoFormula exists(const FoFormula& body) { return FoFormula::unary(Op::Existential, body); }

}  // namespace monolat

template <class L>
struct std::hash<monolat::Formula<L>> {
  std::size_t operator()(const monolat::Formula<L>& f) const noexcept { return f.hash(); }
};
