#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dgeom/expr.hpp"

namespace dgeom {

using NumericFn = std::function<double(std::span<const double>)>;

/// Numeric implementation of an undefined function and of whichever of its
/// partial derivatives the expression needs, keyed by sorted 0-based slots.
struct FunctionTable {
  NumericFn value;
  std::map<std::vector<int>, NumericFn> partials;
};

using NumericPoint = std::map<std::string, double>;
using NumericFunctions = std::map<std::string, FunctionTable>;

/// IEEE double evaluation. Throws EvalError on unbound symbols or
/// functions, ln of a nonpositive value and division by zero.
double eval_numeric(const Expr& e, const NumericPoint& point, const NumericFunctions& fns = {});

}  // namespace dgeom
