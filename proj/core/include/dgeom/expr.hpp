#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace dgeom {

/// Node kinds, listed in canonical order (constants sort first, sums last).
enum class Kind : std::uint8_t {
  Rational,
  Symbol,
  Function,
  Derivative,
  Elementary,
  Power,
  Product,
  Sum,
};

enum class ElemFn : std::uint8_t { Sin, Cos, Tan, Exp, Ln, Tanh, Sech };

std::string_view elem_name(ElemFn fn);

class Expr;

namespace detail {

struct Node {
  Kind kind = Kind::Rational;
  ElemFn fn = ElemFn::Sin;
  long exponent = 0;
  bool normalized = false;
  std::size_t hash = 0;
  mpq_class value;
  std::string name;
  std::vector<Expr> children;
  std::vector<int> slots;
};

}  // namespace detail

/// Immutable symbolic expression. Copies share the underlying tree.
///
/// The factories only flatten nested sums/products and fold rational
/// constants; canonical ordering and cancellation happen in normalize().
class Expr {
 public:
  Expr();
  Expr(int n);  // NOLINT(google-explicit-constructor)
  Expr(long n);  // NOLINT(google-explicit-constructor)

  static Expr rational(const mpq_class& q);
  static Expr rational(long num, long den);
  static Expr symbol(std::string name);
  static Expr function(std::string name, std::vector<Expr> args);
  /// Partial derivative of the applied function `name(args)`; `slots` are
  /// 0-based argument positions and are stored sorted.
  static Expr derivative(std::string name, std::vector<Expr> args, std::vector<int> slots);
  static Expr elementary(ElemFn fn, Expr arg);
  static Expr power(Expr base, long exponent);
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);

  Kind kind() const { return node_->kind; }
  const mpq_class& value() const { return node_->value; }
  const std::string& name() const { return node_->name; }
  ElemFn elementary_fn() const { return node_->fn; }
  long exponent() const { return node_->exponent; }
  std::span<const Expr> children() const { return node_->children; }
  std::span<const int> slots() const { return node_->slots; }
  const Expr& base() const { return node_->children.front(); }
  const Expr& arg() const { return node_->children.front(); }
  std::size_t hash() const { return node_->hash; }
  bool is_normalized() const { return node_->normalized; }

  bool is_rational() const { return kind() == Kind::Rational; }
  bool is_symbol() const { return kind() == Kind::Symbol; }
  bool is_zero() const;
  bool is_one() const;
  bool is_symbol(std::string_view name) const;

  /// Returns a copy flagged as being in normal form. Used by normalize().
  Expr mark_normalized() const;

  friend bool operator==(const Expr& a, const Expr& b);
  friend std::strong_ordering operator<=>(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}
  static Expr make(detail::Node node);

  std::shared_ptr<const detail::Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, long exponent);

inline Expr sym(std::string name) { return Expr::symbol(std::move(name)); }
Expr apply(std::string name, std::initializer_list<Expr> args);
Expr apply(std::string name, std::span<const std::string> arg_names);

/// True when any symbol with this name occurs in `e`, including inside
/// function arguments.
bool depends_on(const Expr& e, std::string_view symbol);
bool contains_functions(const Expr& e);
bool contains_elementary(const Expr& e);

/// Names of all symbols occurring in `e`, sorted.
std::vector<std::string> free_symbols(const Expr& e);

struct ExprHash {
  std::size_t operator()(const Expr& e) const noexcept { return e.hash(); }
};

}  // namespace dgeom
