#pragma once

#include <random>
#include <string>
#include <vector>

#include "dgeom/algebra.hpp"
#include "dgeom/expr.hpp"

namespace dgeom::test_support {

class RandomExpr {
 public:
  explicit RandomExpr(unsigned seed) : rng_(seed) {}

  std::mt19937& rng() { return rng_; }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Expr rational() { return Expr::rational(uniform(-9, 9), uniform(1, 4)); }

  Expr nonzero_rational() {
    int n = 0;
    while (n == 0) n = uniform(-9, 9);
    return Expr::rational(n, uniform(1, 4));
  }

  /// Random polynomial with at most `terms` monomials of total degree <= degree.
  Expr polynomial(const std::vector<std::string>& vars, int degree, int terms = 4) {
    std::vector<Expr> out;
    for (int t = 0; t < terms; ++t) {
      std::vector<Expr> factors{rational()};
      const int d = uniform(0, degree);
      for (int k = 0; k < d; ++k) factors.push_back(sym(vars[uniform(0, static_cast<int>(vars.size()) - 1)]));
      out.push_back(Expr::product(std::move(factors)));
    }
    return Expr::sum(std::move(out));
  }

  /// Polynomial that may also contain applications of `fn(vars...)` and
  /// its first partials.
  Expr with_functions(const std::vector<std::string>& vars, const std::string& fn, int degree) {
    std::vector<Expr> args;
    for (const auto& v : vars) args.push_back(sym(v));
    const Expr f = Expr::function(fn, args);
    std::vector<Expr> atoms{f};
    for (int i = 0; i < static_cast<int>(vars.size()); ++i) atoms.push_back(Expr::derivative(fn, args, {i}));
    std::vector<Expr> out{polynomial(vars, degree)};
    const int extra = uniform(1, 3);
    for (int t = 0; t < extra; ++t) {
      out.push_back(polynomial(vars, 1, 2) * atoms[uniform(0, static_cast<int>(atoms.size()) - 1)]);
    }
    return Expr::sum(std::move(out));
  }

 private:
  std::mt19937 rng_;
};

}  // namespace dgeom::test_support
