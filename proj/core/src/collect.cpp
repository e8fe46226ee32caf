#include <algorithm>
#include <set>

#include "dgeom/algebra.hpp"
#include "dgeom/errors.hpp"
#include "dgeom/parse.hpp"
#include "polynomial.hpp"

namespace dgeom {

std::vector<CollectedTerm> collect(const Expr& e, const std::vector<std::string>& vars) {
  const detail::RatFun r = detail::to_ratfun(e, nullptr);
  const std::set<std::string> var_set(vars.begin(), vars.end());

  auto check_atoms = [&](const detail::Poly& p, bool denominator) {
    for (const auto& atom : p.atoms()) {
      if (atom.is_symbol()) {
        if (denominator && var_set.count(atom.name())) {
          throw DomainError("collect: '" + atom.name() + "' appears in a denominator of " + print(e));
        }
        continue;
      }
      for (const auto& v : vars) {
        if (depends_on(atom, v)) {
          throw DomainError("collect: '" + v + "' appears inside " + print(atom));
        }
      }
    }
  };
  check_atoms(r.num, false);
  check_atoms(r.den, true);

  std::map<detail::Monomial, detail::Poly, detail::MonomialGreater> groups;
  for (const auto& [m, c] : r.num.terms()) {
    detail::Monomial var_part;
    detail::Monomial rest;
    for (const auto& f : m) {
      if (f.first.is_symbol() && var_set.count(f.first.name())) var_part.push_back(f);
      else rest.push_back(f);
    }
    groups[var_part].add_term(rest, c);
  }

  std::vector<CollectedTerm> out;
  out.reserve(groups.size());
  for (const auto& [m, coeff] : groups) {
    Expr c = detail::to_expr(coeff);
    if (!r.den.is_constant()) c = normalize(Expr::product({c, pow(detail::to_expr(r.den), -1)}));
    out.push_back({detail::monomial_expr(m), std::move(c)});
  }
  return out;
}

}  // namespace dgeom
