#include "dgeom/evaluate.hpp"

#include <cmath>
#include <vector>

#include "dgeom/errors.hpp"

namespace dgeom {

namespace {

std::vector<double> eval_args(const Expr& e, const NumericPoint& point, const NumericFunctions& fns) {
  std::vector<double> args;
  args.reserve(e.children().size());
  for (const auto& c : e.children()) args.push_back(eval_numeric(c, point, fns));
  return args;
}

}  // namespace

double eval_numeric(const Expr& e, const NumericPoint& point, const NumericFunctions& fns) {
  switch (e.kind()) {
    case Kind::Rational:
      return e.value().get_d();
    case Kind::Symbol: {
      auto it = point.find(e.name());
      if (it == point.end()) throw EvalError("unbound symbol '" + e.name() + "'");
      return it->second;
    }
    case Kind::Function:
    case Kind::Derivative: {
      auto it = fns.find(e.name());
      if (it == fns.end()) throw EvalError("unbound function '" + e.name() + "'");
      const auto args = eval_args(e, point, fns);
      if (e.kind() == Kind::Function) {
        if (!it->second.value) throw EvalError("function '" + e.name() + "' has no value callable");
        return it->second.value(args);
      }
      const std::vector<int> slots(e.slots().begin(), e.slots().end());
      auto d = it->second.partials.find(slots);
      if (d == it->second.partials.end()) throw EvalError("missing partial derivative of '" + e.name() + "'");
      return d->second(args);
    }
    case Kind::Elementary: {
      const double a = eval_numeric(e.arg(), point, fns);
      switch (e.elementary_fn()) {
        case ElemFn::Sin: return std::sin(a);
        case ElemFn::Cos: return std::cos(a);
        case ElemFn::Tan: return std::tan(a);
        case ElemFn::Exp: return std::exp(a);
        case ElemFn::Ln:
          if (a <= 0.0) throw EvalError("ln of a nonpositive value");
          return std::log(a);
        case ElemFn::Tanh: return std::tanh(a);
        case ElemFn::Sech: return 1.0 / std::cosh(a);
      }
      return 0.0;
    }
    case Kind::Power: {
      const double b = eval_numeric(e.base(), point, fns);
      if (b == 0.0 && e.exponent() < 0) throw EvalError("division by zero");
      return std::pow(b, static_cast<double>(e.exponent()));
    }
    case Kind::Product: {
      double acc = 1.0;
      for (const auto& c : e.children()) acc *= eval_numeric(c, point, fns);
      return acc;
    }
    case Kind::Sum: {
      double acc = 0.0;
      for (const auto& c : e.children()) acc += eval_numeric(c, point, fns);
      return acc;
    }
  }
  return 0.0;
}

}  // namespace dgeom
