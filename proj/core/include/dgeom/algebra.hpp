#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dgeom/expr.hpp"

namespace dgeom {

/// Expressions assumed nonzero while cancelling or dividing. Accumulated
/// alongside results so that generic-point answers keep their conditions.
class GenericityLedger {
 public:
  void assume_nonzero(const Expr& e);
  void merge(const GenericityLedger& other);
  const std::vector<Expr>& conditions() const { return conditions_; }
  bool empty() const { return conditions_.empty(); }

 private:
  std::vector<Expr> conditions_;
};

struct NormalForm {
  Expr expr;
  GenericityLedger ledger;
};

/// Canonical form: expanded numerator over expanded denominator with their
/// GCD removed, atoms (symbols, function applications, elementary
/// functions) in canonical order. Equal rational functions map to
/// identical trees. Applies the fixed elementary rewrites
/// cos^2 -> 1 - sin^2, tanh^2 -> 1 - sech^2 and the values at 0 / 1.
Expr normalize(const Expr& e);
NormalForm normalize_tracked(const Expr& e);

struct Fraction {
  Expr numerator;
  Expr denominator;  // 1 for polynomials; monic otherwise
};

/// Numerator and denominator of the normal form.
Fraction as_fraction(const Expr& e);

/// a / b, normalized. Uses polynomial long division when both are
/// polynomials and b divides a, skipping the gcd computation.
Expr exact_quotient(const Expr& a, const Expr& b);

struct ZeroStatus {
  enum class State { Zero, NonZero, UnresolvedZero };
  State state = State::Zero;
  int probes = 0;

  bool zero() const { return state == State::Zero; }
  bool nonzero() const { return state == State::NonZero; }
  bool unresolved() const { return state == State::UnresolvedZero; }
};

std::string to_string(ZeroStatus status);

struct ProbeOptions {
  int probes = 8;
  long max_height = 1000;  // numerators and denominators of probe points
  int retries = 16;        // fresh points tried when a probe hits a pole
};

/// Probe configuration for is_zero calls made on this thread while the
/// scope is alive (linear algebra and distribution code call is_zero
/// internally).
class ProbeScope {
 public:
  explicit ProbeScope(ProbeOptions options);
  ~ProbeScope();
  ProbeScope(const ProbeScope&) = delete;
  ProbeScope& operator=(const ProbeScope&) = delete;

  static const ProbeOptions& current();

 private:
  ProbeOptions previous_;
};

/// Zero iff the normal form is literally 0. Otherwise, expressions with
/// undefined or elementary functions are probed at random rational points
/// (functions replaced by random low-degree polynomials): any nonzero probe
/// gives NonZero, all-zero probes give UnresolvedZero. Purely rational
/// expressions with a nonzero normal form are NonZero.
ZeroStatus is_zero(const Expr& e);
ZeroStatus is_zero(const Expr& e, const ProbeOptions& options);

/// Partial derivative by the symbol `var`; applied undefined functions
/// follow the chain rule into derivative nodes. Result is normalized.
Expr diff(const Expr& e, const std::string& var);
Expr diff(const Expr& e, const Expr& var);

/// A concrete body for an undefined function, written in its formal
/// parameter symbols.
struct FunctionBinding {
  std::vector<std::string> params;
  Expr body;
};

struct Bindings {
  std::map<std::string, Expr> symbols;
  std::map<std::string, FunctionBinding> functions;

  Bindings& bind(std::string symbol, Expr value);
  Bindings& bind(std::string function, std::vector<std::string> params, Expr body);
};

/// Simultaneous substitution followed by normalization. Derivative nodes of
/// a bound function become the matching partials of its body. Bodies are
/// inserted as given (symbol bindings are not re-applied inside them).
Expr substitute(const Expr& e, const Bindings& bindings);
Expr substitute(const Expr& e, const std::string& symbol, const Expr& value);

/// Same substitution without the final normalization.
Expr substitute_raw(const Expr& e, const Bindings& bindings);

struct CollectedTerm {
  Expr monomial;     // product of powers of the collected variables, or 1
  Expr coefficient;  // normalized, free of the collected variables
};

/// Coefficient decomposition of `e` with respect to monomials in `vars`,
/// ordered by descending lexicographic monomial. Throws DomainError when
/// `e` is not polynomial in some variable.
std::vector<CollectedTerm> collect(const Expr& e, const std::vector<std::string>& vars);

}  // namespace dgeom
