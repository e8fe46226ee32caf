#pragma once

// Sparse multivariate polynomials over Q whose variables ("atoms") are
// normalized expressions: symbols, undefined-function applications,
// derivative nodes and elementary-function applications.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "dgeom/algebra.hpp"
#include "dgeom/expr.hpp"

namespace dgeom::detail {

/// Atoms sorted ascending, exponents positive.
using Monomial = std::vector<std::pair<Expr, int>>;

/// Lexicographic order in which smaller atoms are more significant.
/// Returns <0, 0, >0.
int compare_monomials(const Monomial& a, const Monomial& b);
Monomial multiply(const Monomial& a, const Monomial& b);
std::optional<Monomial> divide(const Monomial& a, const Monomial& b);

struct MonomialGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare_monomials(a, b) > 0; }
};

class Poly {
 public:
  /// Leading (lex-greatest) term first.
  using Terms = std::map<Monomial, mpq_class, MonomialGreater>;

  Poly() = default;
  static Poly constant(const mpq_class& c);
  static Poly atom(const Expr& a, int exponent = 1);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  mpq_class constant_value() const;
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const mpq_class& c);

  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const mpq_class& leading_coefficient() const { return terms_.begin()->second; }

  /// Distinct atoms, ascending.
  std::vector<Expr> atoms() const;
  bool has_atom(const Expr& a) const;
  int degree_in(const Expr& a) const;
  /// exponent of `a` -> coefficient polynomial free of `a`.
  std::map<int, Poly> coefficients_in(const Expr& a) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const mpq_class& c) const;
  Poly pow(unsigned long n) const;
  Poly negated() const { return scaled(-1); }

  bool operator==(const Poly& o) const;

 private:
  Terms terms_;
};

std::optional<Poly> exact_divide(const Poly& a, const Poly& b);
/// Monic greatest common divisor (1 when coprime, monic(b) when a == 0).
Poly gcd(const Poly& a, const Poly& b);
Poly make_monic(const Poly& p);

/// Applies cos^2 -> 1 - sin^2 and tanh^2 -> 1 - sech^2 until no atom of
/// those kinds appears with exponent >= 2.
Poly reduce_elementary(const Poly& p);

struct RatFun {
  Poly num;
  Poly den = Poly::constant(1);
};

/// Converts to a canonical rational function (numerator and denominator
/// coprime, denominator monic). Cancelled factors and the final
/// denominator are recorded in `ledger` when given.
RatFun to_ratfun(const Expr& e, GenericityLedger* ledger);

Expr to_expr(const Poly& p);
Expr to_expr(const RatFun& r);
Expr monomial_expr(const Monomial& m);

}  // namespace dgeom::detail
