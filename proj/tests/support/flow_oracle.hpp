#pragma once

#include <string>
#include <vector>

#include "dgeom/algebra.hpp"
#include "dgeom/errors.hpp"
#include "dgeom/geometry.hpp"

namespace dgeom::test_support {

// Power of `s` in a collected monomial.
inline int degree_in(const Expr& monomial, const std::string& s) {
  if (monomial.is_one()) return 0;
  if (monomial.is_symbol(s)) return 1;
  if (monomial.kind() == Kind::Power && monomial.base().is_symbol(s)) return static_cast<int>(monomial.exponent());
  return -1;
}

/// Series of the flow of `x` obtained by Picard iteration
///   phi_{n+1}(s) = c + integral_0^s X(phi_n(sigma)) dsigma,
/// truncated at `degree`. Entry [i][k] is the s^k coefficient of the image
/// of coordinate i. Independent of the Lie series: it composes X with the
/// current approximation instead of iterating X as a derivation.
inline std::vector<std::vector<Expr>> picard_series(const VectorField& x, int degree, const std::string& s = "s") {
  const Chart& c = x.chart();
  std::vector<std::vector<Expr>> phi(c.dim(), std::vector<Expr>(static_cast<std::size_t>(degree) + 1, Expr(0)));
  for (std::size_t i = 0; i < c.dim(); ++i) phi[i][0] = sym(c[i]);
  const Expr sv = sym(s);
  for (int iter = 0; iter <= degree; ++iter) {
    Bindings b;
    for (std::size_t i = 0; i < c.dim(); ++i) {
      std::vector<Expr> terms;
      for (std::size_t k = 0; k < phi[i].size(); ++k) terms.push_back(phi[i][k] * pow(sv, static_cast<long>(k)));
      b.bind(c[i], Expr::sum(std::move(terms)));
    }
    auto next = phi;
    for (std::size_t i = 0; i < c.dim(); ++i) {
      for (std::size_t k = 1; k < next[i].size(); ++k) next[i][k] = Expr(0);
      for (const auto& term : collect(substitute(x[i], b), {s})) {
        const int k = degree_in(term.monomial, s);
        if (k < 0) throw Error("unexpected monomial " + std::to_string(k));
        if (k + 1 > degree) continue;
        next[i][static_cast<std::size_t>(k) + 1] = normalize(term.coefficient / Expr(k + 1));
      }
    }
    phi = std::move(next);
  }
  return phi;
}

}  // namespace dgeom::test_support
