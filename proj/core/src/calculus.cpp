#include <map>

#include "dgeom/algebra.hpp"
#include "dgeom/errors.hpp"

namespace dgeom {

namespace {

Expr diff_raw(const Expr& e, const std::string& v);

// d/dv of name(args) with existing slots, by the chain rule over every
// argument that depends on v.
Expr diff_application(const Expr& e, const std::string& v) {
  std::vector<Expr> terms;
  const auto args = e.children();
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!depends_on(args[i], v)) continue;
    Expr inner = diff_raw(args[i], v);
    if (inner.is_zero()) continue;
    std::vector<int> slots(e.slots().begin(), e.slots().end());
    slots.push_back(static_cast<int>(i));
    terms.push_back(Expr::derivative(e.name(), {args.begin(), args.end()}, std::move(slots)) * inner);
  }
  return Expr::sum(std::move(terms));
}

Expr diff_elementary(const Expr& e, const std::string& v) {
  const Expr& a = e.arg();
  Expr da = diff_raw(a, v);
  if (da.is_zero()) return Expr(0);
  Expr outer;
  switch (e.elementary_fn()) {
    case ElemFn::Sin:
      outer = Expr::elementary(ElemFn::Cos, a);
      break;
    case ElemFn::Cos:
      outer = -Expr::elementary(ElemFn::Sin, a);
      break;
    case ElemFn::Tan:
      outer = 1 + pow(e, 2);
      break;
    case ElemFn::Exp:
      outer = e;
      break;
    case ElemFn::Ln:
      outer = pow(a, -1);
      break;
    case ElemFn::Tanh:
      outer = pow(Expr::elementary(ElemFn::Sech, a), 2);
      break;
    case ElemFn::Sech:
      outer = -(e * Expr::elementary(ElemFn::Tanh, a));
      break;
  }
  return outer * da;
}

Expr diff_raw(const Expr& e, const std::string& v) {
  switch (e.kind()) {
    case Kind::Rational:
      return Expr(0);
    case Kind::Symbol:
      return Expr(e.name() == v ? 1 : 0);
    case Kind::Function:
    case Kind::Derivative:
      return diff_application(e, v);
    case Kind::Elementary:
      return diff_elementary(e, v);
    case Kind::Power: {
      Expr db = diff_raw(e.base(), v);
      if (db.is_zero()) return Expr(0);
      return Expr::product({Expr(e.exponent()), pow(e.base(), e.exponent() - 1), db});
    }
    case Kind::Product: {
      std::vector<Expr> terms;
      const auto fs = e.children();
      for (std::size_t i = 0; i < fs.size(); ++i) {
        Expr d = diff_raw(fs[i], v);
        if (d.is_zero()) continue;
        std::vector<Expr> factors(fs.begin(), fs.end());
        factors[i] = d;
        terms.push_back(Expr::product(std::move(factors)));
      }
      return Expr::sum(std::move(terms));
    }
    case Kind::Sum: {
      std::vector<Expr> terms;
      for (const auto& t : e.children()) terms.push_back(diff_raw(t, v));
      return Expr::sum(std::move(terms));
    }
  }
  return Expr(0);
}

Expr substitute_symbols(const Expr& e, const std::map<std::string, Expr>& values);

Expr rebuild(const Expr& e, std::vector<Expr> children) {
  switch (e.kind()) {
    case Kind::Function:
      return Expr::function(e.name(), std::move(children));
    case Kind::Derivative:
      return Expr::derivative(e.name(), std::move(children), {e.slots().begin(), e.slots().end()});
    case Kind::Elementary:
      return Expr::elementary(e.elementary_fn(), std::move(children.front()));
    case Kind::Power:
      return pow(children.front(), e.exponent());
    case Kind::Product:
      return Expr::product(std::move(children));
    case Kind::Sum:
      return Expr::sum(std::move(children));
    default:
      return e;
  }
}

Expr substitute_symbols(const Expr& e, const std::map<std::string, Expr>& values) {
  if (e.is_symbol()) {
    auto it = values.find(e.name());
    return it == values.end() ? e : it->second;
  }
  if (e.children().empty()) return e;
  std::vector<Expr> children;
  children.reserve(e.children().size());
  for (const auto& c : e.children()) children.push_back(substitute_symbols(c, values));
  return rebuild(e, std::move(children));
}

Expr substitute_impl(const Expr& e, const Bindings& b) {
  switch (e.kind()) {
    case Kind::Rational:
      return e;
    case Kind::Symbol: {
      auto it = b.symbols.find(e.name());
      return it == b.symbols.end() ? e : it->second;
    }
    default:
      break;
  }
  std::vector<Expr> children;
  children.reserve(e.children().size());
  for (const auto& c : e.children()) children.push_back(substitute_impl(c, b));

  if (e.kind() == Kind::Function || e.kind() == Kind::Derivative) {
    auto it = b.functions.find(e.name());
    if (it != b.functions.end()) {
      const FunctionBinding& fb = it->second;
      if (fb.params.size() != children.size()) {
        throw DomainError("function " + e.name() + " bound with " + std::to_string(fb.params.size()) +
                          " parameters but applied to " + std::to_string(children.size()) + " arguments");
      }
      Expr body = fb.body;
      for (int s : e.slots()) body = diff_raw(body, fb.params[static_cast<std::size_t>(s)]);
      std::map<std::string, Expr> values;
      for (std::size_t i = 0; i < fb.params.size(); ++i) values.emplace(fb.params[i], children[i]);
      return substitute_symbols(body, values);
    }
  }
  return rebuild(e, std::move(children));
}

}  // namespace

Expr diff(const Expr& e, const std::string& var) { return normalize(diff_raw(e, var)); }

Expr diff(const Expr& e, const Expr& var) {
  if (!var.is_symbol()) throw DomainError("diff: variable must be a symbol");
  return diff(e, var.name());
}

Bindings& Bindings::bind(std::string symbol, Expr value) {
  symbols.insert_or_assign(std::move(symbol), std::move(value));
  return *this;
}

Bindings& Bindings::bind(std::string function, std::vector<std::string> params, Expr body) {
  functions.insert_or_assign(std::move(function), FunctionBinding{std::move(params), std::move(body)});
  return *this;
}

Expr substitute_raw(const Expr& e, const Bindings& bindings) { return substitute_impl(e, bindings); }

Expr substitute(const Expr& e, const Bindings& bindings) { return normalize(substitute_impl(e, bindings)); }

Expr substitute(const Expr& e, const std::string& symbol, const Expr& value) {
  Bindings b;
  b.bind(symbol, value);
  return substitute(e, b);
}

}  // namespace dgeom
