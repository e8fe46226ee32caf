#include "dgeom/distribution.hpp"

#include <mutex>
#include <tuple>

#include "dgeom/errors.hpp"
#include "dgeom/parse.hpp"

namespace dgeom {

struct Distribution::Annihilator {
  std::once_flag once;
  std::vector<KForm> forms;
  GenericityLedger ledger;
};

namespace {

ExprMatrix field_matrix(const std::vector<VectorField>& fields) {
  std::vector<ExprVector> rows;
  for (const auto& f : fields) rows.push_back(f.coefficients());
  return ExprMatrix::from_rows(rows);
}

ExprMatrix form_matrix(const std::vector<KForm>& forms) {
  std::vector<ExprVector> rows;
  for (const auto& f : forms) rows.push_back(f.covector());
  return ExprMatrix::from_rows(rows);
}

void require_status(const ZeroStatus& s, const Expr& e, std::string_view what) {
  if (s.unresolved()) throw UnresolvedZeroError(std::string(what) + ": cannot decide " + print(e));
}

// Orders witnesses: fewer nonzero components first, then shorter text.
std::tuple<std::size_t, std::size_t> complexity(const VectorField& x) {
  std::size_t nonzero = 0;
  for (const auto& c : x.coefficients()) nonzero += c.is_zero() ? 0 : 1;
  return {nonzero, print(x).size()};
}

}  // namespace

Distribution::Distribution() : annihilator_(std::make_shared<Annihilator>()) {}

Distribution::Distribution(Chart chart, std::vector<VectorField> generators)
    : chart_(std::move(chart)), generators_(std::move(generators)), annihilator_(std::make_shared<Annihilator>()) {
  for (const auto& g : generators_) require_same_chart(chart_, g.chart(), "distribution generator");
  if (generators_.size() > chart_.dim()) throw DomainError("more generators than coordinates");
  if (!generators_.empty()) {
    const RankResult r = dgeom::rank(field_matrix(generators_));
    if (r.rank != generators_.size()) throw DomainError("distribution generators are dependent");
    ledger_.merge(r.ledger);
  }
}

Distribution Distribution::from_coforms(Chart chart, std::vector<KForm> coforms) {
  Distribution d(chart, coform_kernel(chart, coforms));
  std::call_once(d.annihilator_->once, [&] { d.annihilator_->forms = std::move(coforms); });
  return d;
}

Distribution Distribution::with_coforms(Chart chart, std::vector<VectorField> generators, std::vector<KForm> coforms) {
  Distribution d(chart, std::move(generators));
  if (d.rank() + coforms.size() != chart.dim()) throw DomainError("presentations do not add up to the dimension");
  for (const auto& f : coforms) {
    require_same_chart(chart, f.chart(), "coform");
    if (f.degree() != 1) throw DomainError("coform generators must be 1-forms");
    for (const auto& g : d.generators()) {
      const Expr v = pair(f, g);
      const ZeroStatus s = is_zero(v);
      require_status(s, v, "distribution presentations");
      if (!s.zero()) throw DomainError("coform " + print(f) + " does not vanish on " + print(g));
    }
  }
  if (!coforms.empty() && rref(form_matrix(coforms)).pivots.size() != coforms.size()) {
    throw DomainError("coform generators are dependent");
  }
  std::call_once(d.annihilator_->once, [&] { d.annihilator_->forms = std::move(coforms); });
  return d;
}

const std::vector<KForm>& Distribution::coforms() const {
  Annihilator& a = *annihilator_;
  std::call_once(a.once, [&] {
    if (generators_.empty()) {
      for (const auto& c : chart_.coordinates()) a.forms.push_back(KForm::differential(chart_, c));
      return;
    }
    for (const auto& v : nullspace(field_matrix(generators_), a.ledger)) a.forms.push_back(KForm::one_form(chart_, v));
  });
  return a.forms;
}

GenericityLedger Distribution::ledger() const {
  coforms();
  GenericityLedger out = ledger_;
  out.merge(annihilator_->ledger);
  return out;
}

std::vector<KForm> annihilator(const Distribution& d) { return d.coforms(); }

std::vector<VectorField> coform_kernel(const Chart& chart, const std::vector<KForm>& forms) {
  std::vector<VectorField> out;
  if (forms.empty()) {
    for (const auto& c : chart.coordinates()) out.push_back(VectorField::coordinate(chart, c));
    return out;
  }
  for (const auto& f : forms) {
    require_same_chart(chart, f.chart(), "coform");
    if (f.degree() != 1) throw DomainError("coform generators must be 1-forms");
  }
  const ExprMatrix m = form_matrix(forms);
  const RrefResult r = rref(m);
  if (r.pivots.size() != forms.size()) throw DomainError("coform generators are dependent");
  for (const auto& v : nullspace(m)) out.emplace_back(chart, v);
  return out;
}

Membership contains_vf(const Distribution& d, const VectorField& x) {
  require_same_chart(d.chart(), x.chart(), "contains_vf");
  std::vector<ExprVector> basis;
  for (const auto& g : d.generators()) basis.push_back(g.coefficients());
  return solve_membership(basis, x.coefficients());
}

// Generator sufficiency: for Y = sum f_j X_j, [X, Y] = sum X(f_j) X_j +
// sum f_j [X, X_j], and D is a module over functions, so [X, Y] lies in D
// for every Y in D as soon as it does for the generators. The same
// function-linearity reduces the form criterion to generator pairs.
InvolutivityResult is_involutive(const Distribution& d) {
  InvolutivityResult out;
  const auto& g = d.generators();
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const VectorField b = bracket(g[i], g[j]);
      if (b.is_zero()) continue;
      const Membership m = contains_vf(d, b);
      out.ledger.merge(m.ledger);
      if (m.in_span) continue;
      out.involutive = false;
      if (!out.witness || complexity(b) < complexity(out.witness->bracket)) out.witness = BracketWitness{i, j, b};
    }
  }
  return out;
}

SymmetryCheck is_symmetry_brackets(const Distribution& d, const VectorField& x) {
  require_same_chart(d.chart(), x.chart(), "symmetry check");
  SymmetryCheck out;
  const auto& g = d.generators();
  for (std::size_t j = 0; j < g.size(); ++j) {
    const VectorField b = bracket(x, g[j]);
    if (b.is_zero()) continue;
    const Membership m = contains_vf(d, b);
    out.ledger.merge(m.ledger);
    if (m.in_span) continue;
    out.symmetry = false;
    if (!out.witness || complexity(b) < complexity(out.witness->bracket)) out.witness = BracketWitness{0, j, b};
  }
  return out;
}

FormsSymmetryCheck is_symmetry_forms(const Distribution& d, const VectorField& x) {
  require_same_chart(d.chart(), x.chart(), "symmetry check");
  FormsSymmetryCheck out;
  const auto& forms = d.coforms();
  const auto& g = d.generators();
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const KForm l = lie_derivative(x, forms[i]);
    for (std::size_t j = 0; j < g.size(); ++j) {
      const Expr v = pair(l, g[j]);
      const ZeroStatus s = is_zero(v);
      require_status(s, v, "form symmetry check");
      if (s.nonzero()) {
        out.symmetry = false;
        out.witness = FormsWitness{i, j, v};
        return out;
      }
    }
  }
  return out;
}

FiniteSymmetryCheck is_finite_symmetry(const Distribution& d, const SmoothMap& f) {
  require_same_chart(d.chart(), f.source(), "finite symmetry source");
  require_same_chart(d.chart(), f.target(), "finite symmetry target");
  FiniteSymmetryCheck out;
  const auto& forms = d.coforms();
  std::vector<KForm> pulled;
  for (const auto& w : forms) pulled.push_back(pullback(f, w));

  std::vector<ExprVector> basis;
  for (const auto& w : forms) basis.push_back(w.covector());
  for (std::size_t i = 0; i < pulled.size(); ++i) {
    const Membership m = solve_membership(basis, pulled[i].covector());
    out.ledger.merge(m.ledger);
    if (!m.in_span) {
      out.symmetry = false;
      out.failing_form = i;
      break;
    }
  }

  if (d.chart().dim() <= 7 && !forms.empty()) {
    KForm top = forms.front();
    for (std::size_t i = 1; i < forms.size(); ++i) top = wedge(top, forms[i]);
    bool all_zero = true;
    for (const auto& p : pulled) {
      const KForm w = wedge(p, top);
      for (const auto& [index, c] : w.terms()) {
        const ZeroStatus s = is_zero(c);
        require_status(s, c, "wedge criterion");
        all_zero = all_zero && s.zero();
      }
    }
    out.wedge_symmetry = all_zero;
  }
  return out;
}

std::vector<std::size_t> default_complement(const Distribution& d) {
  std::vector<bool> pivot(d.chart().dim(), false);
  if (d.rank() > 0) {
    for (std::size_t p : rref(field_matrix(d.generators())).pivots) pivot[p] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < pivot.size(); ++c) {
    if (!pivot[c]) out.push_back(c);
  }
  return out;
}

Reduction reduce_mod(const Distribution& d, const VectorField& x, const std::vector<std::size_t>& complement) {
  require_same_chart(d.chart(), x.chart(), "reduce_mod");
  const std::size_t dim = d.chart().dim();
  std::vector<bool> in_complement(dim, false);
  for (std::size_t c : complement) {
    if (c >= dim) throw DomainError("complement index out of range");
    in_complement[c] = true;
  }
  std::vector<std::size_t> kept;
  for (std::size_t c = 0; c < dim; ++c) {
    if (!in_complement[c]) kept.push_back(c);
  }
  if (kept.size() != d.rank()) throw DomainError("complement size does not match the distribution rank");

  Reduction out;
  out.coefficients.assign(d.rank(), Expr(0));
  if (d.rank() > 0) {
    std::vector<ExprVector> basis;
    for (const auto& g : d.generators()) {
      ExprVector v;
      for (std::size_t c : kept) v.push_back(g[c]);
      basis.push_back(std::move(v));
    }
    const RankResult r = rank(ExprMatrix::from_rows(basis));
    if (r.rank != d.rank()) throw DomainError("complement incompatible with the distribution");
    out.ledger.merge(r.ledger);
    ExprVector target;
    for (std::size_t c : kept) target.push_back(x[c]);
    const Membership m = solve_membership(basis, target);
    out.ledger.merge(m.ledger);
    out.coefficients = m.coefficients;
  }

  VectorField w = x;
  for (std::size_t j = 0; j < d.rank(); ++j) w = w - d.generators()[j].scaled(out.coefficients[j]);
  for (std::size_t c : kept) {
    if (!w[c].is_zero()) throw Error("reduce_mod: residual component on " + d.chart()[c]);
  }
  out.representative = w;
  return out;
}

// [c X_k, X_j] = c [X_k, X_j] - X_j(c) X_k and the last term lies in D, so
// omega^i([Z, X_j]) = omega^i([W, X_j]) + sum_k c_k omega^i([X_k, X_j]).
Lift lift_to_symmetry(const Distribution& d, const VectorField& w) {
  require_same_chart(d.chart(), w.chart(), "lift");
  Lift out;
  const auto& g = d.generators();
  const auto& forms = d.coforms();
  if (g.empty() || forms.empty()) {
    out.liftable = true;
    out.symmetry = w;
    out.coefficients.assign(g.size(), Expr(0));
    return out;
  }
  auto conditions = [&](const VectorField& x, bool negate) {
    ExprVector v;
    for (const auto& y : g) {
      const VectorField b = bracket(x, y);
      for (const auto& f : forms) v.push_back(negate ? normalize(-pair(f, b)) : pair(f, b));
    }
    return v;
  };
  std::vector<ExprVector> basis;
  for (const auto& x : g) basis.push_back(conditions(x, false));
  const Membership m = solve_membership(basis, conditions(w, true));
  out.ledger.merge(m.ledger);
  if (!m.in_span) return out;
  out.liftable = true;
  out.coefficients = m.coefficients;
  out.symmetry = w;
  for (std::size_t k = 0; k < g.size(); ++k) out.symmetry = out.symmetry + g[k].scaled(out.coefficients[k]);
  return out;
}

std::string to_string(SymmetryClass::Kind kind) {
  switch (kind) {
    case SymmetryClass::Kind::Characteristic:
      return "characteristic";
    case SymmetryClass::Kind::ShufflingOnly:
      return "shuffling";
    case SymmetryClass::Kind::NotASymmetry:
      return "not a symmetry";
  }
  return "unknown";
}

SymmetryClass classify(const Distribution& d, const VectorField& x) { return classify(d, x, default_complement(d)); }

SymmetryClass classify(const Distribution& d, const VectorField& x, const std::vector<std::size_t>& complement) {
  SymmetryClass out;
  const SymmetryCheck sym = is_symmetry_brackets(d, x);
  out.ledger.merge(sym.ledger);
  if (!sym.symmetry) {
    out.kind = SymmetryClass::Kind::NotASymmetry;
    out.witness = sym.witness;
    return out;
  }
  const Membership m = contains_vf(d, x);
  out.ledger.merge(m.ledger);
  if (m.in_span) {
    out.kind = SymmetryClass::Kind::Characteristic;
    out.coefficients = m.coefficients;
    out.representative = VectorField::zero(d.chart());
    return out;
  }
  Reduction r = reduce_mod(d, x, complement);
  out.ledger.merge(r.ledger);
  out.kind = SymmetryClass::Kind::ShufflingOnly;
  out.representative = std::move(r.representative);
  return out;
}

}  // namespace dgeom
