#include <algorithm>

#include "dgeom/algebra.hpp"
#include "dgeom/errors.hpp"
#include "polynomial.hpp"

namespace dgeom {

void GenericityLedger::assume_nonzero(const Expr& e) {
  if (e.is_rational()) return;
  if (std::find(conditions_.begin(), conditions_.end(), e) == conditions_.end()) conditions_.push_back(e);
}

void GenericityLedger::merge(const GenericityLedger& other) {
  for (const auto& c : other.conditions_) assume_nonzero(c);
}

namespace detail {
namespace {

bool is_one(const Poly& p) { return p.is_constant() && p.constant_value() == 1; }

RatFun canonicalize(Poly num, Poly den, GenericityLedger* ledger) {
  if (den.is_zero()) throw EvalError("division by zero");
  num = reduce_elementary(num);
  if (num.is_zero()) return {Poly{}, Poly::constant(1)};
  if (den.is_constant()) return {num.scaled(1 / den.constant_value()), Poly::constant(1)};
  den = reduce_elementary(den);
  if (den.is_zero()) throw EvalError("division by zero");
  if (den.is_constant()) return {num.scaled(1 / den.constant_value()), Poly::constant(1)};
  const Poly g = gcd(num, den);
  if (!g.is_constant()) {
    if (ledger) ledger->assume_nonzero(to_expr(g));
    num = *exact_divide(num, g);
    den = *exact_divide(den, g);
  }
  const mpq_class lc = den.leading_coefficient();
  num = reduce_elementary(num.scaled(1 / lc));
  den = reduce_elementary(den.scaled(1 / lc));
  return {std::move(num), std::move(den)};
}

RatFun add(const RatFun& a, const RatFun& b, GenericityLedger* ledger) {
  if (a.num.is_zero()) return b;
  if (b.num.is_zero()) return a;
  if (is_one(a.den) && is_one(b.den)) return {reduce_elementary(a.num + b.num), Poly::constant(1)};
  if (a.den == b.den) return canonicalize(a.num + b.num, a.den, ledger);
  return canonicalize(a.num * b.den + b.num * a.den, a.den * b.den, ledger);
}

RatFun mul(const RatFun& a, const RatFun& b, GenericityLedger* ledger) {
  if (a.num.is_zero() || b.num.is_zero()) return {};
  if (is_one(a.den) && is_one(b.den)) return {reduce_elementary(a.num * b.num), Poly::constant(1)};
  return canonicalize(a.num * b.num, a.den * b.den, ledger);
}

RatFun power(const RatFun& r, long n, GenericityLedger* ledger) {
  if (n == 0) return {Poly::constant(1), Poly::constant(1)};
  if (n < 0) {
    if (r.num.is_zero()) throw EvalError("division by zero");
    RatFun inv = canonicalize(r.den, r.num, ledger);
    return power(inv, -n, ledger);
  }
  const auto e = static_cast<unsigned long>(n);
  if (is_one(r.den)) return {reduce_elementary(r.num.pow(e)), Poly::constant(1)};
  return canonicalize(r.num.pow(e), r.den.pow(e), ledger);
}

RatFun atom(const Expr& a) { return {Poly::atom(a.mark_normalized()), Poly::constant(1)}; }

RatFun constant(const mpq_class& c) { return {Poly::constant(c), Poly::constant(1)}; }

std::vector<Expr> normalized_children(const Expr& e, GenericityLedger* ledger) {
  std::vector<Expr> out;
  out.reserve(e.children().size());
  for (const auto& c : e.children()) {
    if (ledger) {
      NormalForm nf = normalize_tracked(c);
      ledger->merge(nf.ledger);
      out.push_back(std::move(nf.expr));
    } else {
      out.push_back(normalize(c));
    }
  }
  return out;
}

RatFun elementary(const Expr& e, GenericityLedger* ledger) {
  Expr arg = normalized_children(e, ledger).front();
  const ElemFn fn = e.elementary_fn();
  if (arg.is_zero()) {
    switch (fn) {
      case ElemFn::Sin:
      case ElemFn::Tan:
      case ElemFn::Tanh:
        return {};
      case ElemFn::Cos:
      case ElemFn::Exp:
      case ElemFn::Sech:
        return constant(1);
      case ElemFn::Ln:
        throw EvalError("ln(0) is undefined");
    }
  }
  if (fn == ElemFn::Ln && arg.is_one()) return {};
  return atom(Expr::elementary(fn, std::move(arg)));
}

}  // namespace

RatFun to_ratfun(const Expr& e, GenericityLedger* ledger) {
  switch (e.kind()) {
    case Kind::Rational:
      return constant(e.value());
    case Kind::Symbol:
      return atom(e);
    case Kind::Function:
      return atom(Expr::function(e.name(), normalized_children(e, ledger)));
    case Kind::Derivative: {
      std::vector<int> slots(e.slots().begin(), e.slots().end());
      return atom(Expr::derivative(e.name(), normalized_children(e, ledger), std::move(slots)));
    }
    case Kind::Elementary:
      return elementary(e, ledger);
    case Kind::Power:
      return power(to_ratfun(e.base(), ledger), e.exponent(), ledger);
    case Kind::Product: {
      RatFun acc = constant(1);
      for (const auto& c : e.children()) {
        acc = mul(acc, to_ratfun(c, ledger), ledger);
        if (acc.num.is_zero()) break;
      }
      return acc;
    }
    case Kind::Sum: {
      RatFun acc;
      for (const auto& c : e.children()) acc = add(acc, to_ratfun(c, ledger), ledger);
      return acc;
    }
  }
  return {};
}

}  // namespace detail

Expr normalize(const Expr& e) {
  if (e.is_normalized()) return e;
  return detail::to_expr(detail::to_ratfun(e, nullptr));
}

Fraction as_fraction(const Expr& e) {
  const detail::RatFun r = detail::to_ratfun(e, nullptr);
  return {detail::to_expr(r.num), detail::to_expr(r.den)};
}

Expr exact_quotient(const Expr& a, const Expr& b) {
  const detail::RatFun ra = detail::to_ratfun(a, nullptr);
  const detail::RatFun rb = detail::to_ratfun(b, nullptr);
  if (rb.num.is_zero()) throw EvalError("division by zero");
  if (ra.den.is_constant() && rb.den.is_constant()) {
    if (auto q = detail::exact_divide(ra.num, rb.num)) {
      return detail::to_expr(detail::reduce_elementary(q->scaled(rb.den.constant_value() / ra.den.constant_value())));
    }
  }
  return normalize(a / b);
}

NormalForm normalize_tracked(const Expr& e) {
  NormalForm out;
  const detail::RatFun r = detail::to_ratfun(e, &out.ledger);
  if (!(r.den.is_constant())) out.ledger.assume_nonzero(detail::to_expr(r.den));
  out.expr = detail::to_expr(r);
  return out;
}

}  // namespace dgeom
