#include "dgeom/symmetry.hpp"

#include <algorithm>
#include <set>

#include "dgeom/errors.hpp"
#include "dgeom/parse.hpp"

namespace dgeom {

namespace {

void function_names(const Expr& e, std::set<std::string>& out) {
  if (e.kind() == Kind::Function || e.kind() == Kind::Derivative) out.insert(e.name());
  for (const auto& c : e.children()) function_names(c, out);
}

}  // namespace

SymmetryAnsatz::SymmetryAnsatz(Chart chart) : chart_(std::move(chart)), slots_(chart_.dim()) {
  for (auto& s : slots_) s.concrete = Expr(0);
}

SymmetryAnsatz SymmetryAnsatz::from_field(const VectorField& x) {
  SymmetryAnsatz z(x.chart());
  for (std::size_t i = 0; i < x.chart().dim(); ++i) z.slots_[i].concrete = x[i];
  return z;
}

SymmetryAnsatz& SymmetryAnsatz::set(std::string_view coordinate, const Expr& value) {
  Slot& s = slots_[chart_.index(coordinate)];
  s = Slot{normalize(value), {}, {}};
  return *this;
}

SymmetryAnsatz& SymmetryAnsatz::undetermined(std::string_view coordinate, std::string function,
                                             std::vector<std::string> args) {
  for (const auto& a : args) {
    if (!chart_.contains(a)) throw DomainError("ansatz argument " + a + " is not a chart coordinate");
  }
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    if (!slots_[i].concrete && slots_[i].function == function && i != chart_.index(coordinate)) {
      throw DomainError("ansatz function " + function + " used twice");
    }
  }
  slots_[chart_.index(coordinate)] = Slot{std::nullopt, std::move(function), std::move(args)};
  return *this;
}

std::vector<std::string> SymmetryAnsatz::functions() const {
  std::vector<std::string> out;
  for (const auto& s : slots_) {
    if (!s.concrete) out.push_back(s.function);
  }
  return out;
}

std::vector<std::string> SymmetryAnsatz::collection_variables() const {
  std::vector<std::string> out;
  for (const auto& c : chart_.coordinates()) {
    const bool used = std::any_of(slots_.begin(), slots_.end(), [&](const Slot& s) {
      return !s.concrete && std::find(s.args.begin(), s.args.end(), c) != s.args.end();
    });
    if (!used) out.push_back(c);
  }
  return out;
}

VectorField SymmetryAnsatz::realize() const {
  std::vector<Expr> coefficients;
  for (const auto& s : slots_) {
    if (s.concrete) {
      coefficients.push_back(*s.concrete);
    } else {
      std::vector<Expr> args;
      for (const auto& a : s.args) args.push_back(sym(a));
      coefficients.push_back(Expr::function(s.function, args));
    }
  }
  return {chart_, coefficients};
}

std::string DeterminingSystem::listing() const {
  std::string out;
  for (const auto& e : equations) {
    out += "(" + std::to_string(e.form + 1) + "," + std::to_string(e.generator + 1) + "," + print(e.monomial) +
           "): " + print(e.expr) + "\n";
  }
  return out;
}

DeterminingSystem determining_equations(const Distribution& d, const SymmetryAnsatz& z) {
  require_same_chart(d.chart(), z.chart(), "determining equations");
  DeterminingSystem out;
  out.collection_variables = z.collection_variables();
  const VectorField field = z.realize();
  const auto& forms = d.coforms();
  const auto& gens = d.generators();
  out.raw_count = forms.size() * gens.size();
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const KForm l = lie_derivative(field, forms[i]);
    for (std::size_t j = 0; j < gens.size(); ++j) {
      Expr e = pair(l, gens[j]);
      if (e.is_zero()) continue;
      const Fraction f = as_fraction(e);
      const bool collected_denominator =
          std::any_of(out.collection_variables.begin(), out.collection_variables.end(),
                      [&](const std::string& v) { return depends_on(f.denominator, v); });
      if (collected_denominator) {
        out.ledger.assume_nonzero(f.denominator);
        e = f.numerator;
      }
      std::vector<CollectedTerm> terms;
      try {
        terms = collect(e, out.collection_variables);
      } catch (const DomainError& err) {
        throw DomainError("cannot collect equation (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                          "): " + print(e) + ": " + err.what());
      }
      for (auto& t : terms) {
        if (!t.coefficient.is_zero()) out.equations.push_back({i, j, t.monomial, t.coefficient});
      }
    }
  }
  return out;
}

std::vector<ZeroStatus> verify_candidate(const DeterminingSystem& system, const Bindings& bindings) {
  std::set<std::string> used;
  for (const auto& e : system.equations) function_names(e.expr, used);
  for (const auto& f : used) {
    if (!bindings.functions.contains(f)) throw DomainError("unbound function " + f);
  }
  std::vector<ZeroStatus> out;
  for (const auto& e : system.equations) out.push_back(is_zero(substitute(e.expr, bindings)));
  return out;
}

Bindings bindings_for(const SymmetryAnsatz& z, const VectorField& candidate) {
  require_same_chart(z.chart(), candidate.chart(), "candidate");
  Bindings b;
  for (std::size_t i = 0; i < z.slots().size(); ++i) {
    const auto& s = z.slots()[i];
    if (s.concrete) {
      if (!is_zero(*s.concrete - candidate[i]).zero()) {
        throw DomainError("candidate differs from the fixed ansatz component on " + z.chart()[i]);
      }
      continue;
    }
    for (const auto& c : z.chart().coordinates()) {
      if (depends_on(candidate[i], c) && std::find(s.args.begin(), s.args.end(), c) == s.args.end()) {
        throw DomainError("candidate component on " + z.chart()[i] + " depends on " + c + ", outside " +
                          s.function + "'s arguments");
      }
    }
    b.bind(s.function, s.args, candidate[i]);
  }
  return b;
}

FlowMap lie_series_flow(const VectorField& x, int max_order, std::string parameter) {
  if (max_order < 1) throw DomainError("flow order must be at least 1");
  if (x.chart().contains(parameter)) throw DomainError("flow parameter " + parameter + " clashes with a coordinate");
  FlowMap out;
  out.chart = x.chart();
  out.parameter = std::move(parameter);
  out.exact = true;
  const std::size_t n = x.chart().dim();
  out.series.resize(n);
  mpz_class factorial = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Expr term = sym(x.chart()[i]);
    out.series[i].push_back(term);
    factorial = 1;
    for (int k = 1;; ++k) {
      term = x.apply(term);
      if (term.is_zero()) break;
      if (k > max_order) {
        out.exact = false;
        break;
      }
      factorial *= k;
      out.series[i].push_back(normalize(term * Expr::rational(mpq_class(1, factorial))));
    }
    out.degree = std::max(out.degree, static_cast<int>(out.series[i].size()) - 1);
  }
  if (!out.exact) out.degree = max_order;

  const Expr s = sym(out.parameter);
  for (const auto& coeffs : out.series) {
    std::vector<Expr> terms;
    for (std::size_t k = 0; k < coeffs.size(); ++k) terms.push_back(coeffs[k] * pow(s, static_cast<long>(k)));
    out.components.push_back(normalize(Expr::sum(std::move(terms))));
  }
  return out;
}

SmoothMap flow_as_map(const FlowMap& flow, const Expr& s_value) {
  std::vector<Expr> components;
  for (const auto& c : flow.components) components.push_back(substitute(c, flow.parameter, s_value));
  return {flow.chart, flow.chart, components};
}

}  // namespace dgeom
