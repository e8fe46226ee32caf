#include "dgeom/geometry.hpp"

#include <algorithm>
#include <set>

#include "dgeom/algebra.hpp"
#include "dgeom/errors.hpp"
#include "dgeom/parse.hpp"

namespace dgeom {

Chart::Chart(std::vector<std::string> coordinates) : coordinates_(std::move(coordinates)) {
  std::set<std::string> seen;
  for (const auto& c : coordinates_) {
    if (c.empty()) throw DomainError("empty coordinate name");
    if (!seen.insert(c).second) throw DomainError("duplicate coordinate " + c);
  }
}

std::optional<std::size_t> Chart::find(std::string_view name) const {
  for (std::size_t i = 0; i < coordinates_.size(); ++i) {
    if (coordinates_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t Chart::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw DomainError("'" + std::string(name) + "' is not a coordinate of the chart");
}

void require_same_chart(const Chart& a, const Chart& b, std::string_view what) {
  if (a != b) throw ChartMismatch(std::string(what) + ": operands live on different charts");
}

// ---------------------------------------------------------------------------

VectorField::VectorField(Chart chart, std::vector<Expr> coefficients)
    : chart_(std::move(chart)), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != chart_.dim()) throw DomainError("vector field needs one coefficient per coordinate");
  for (auto& c : coefficients_) c = normalize(c);
}

VectorField VectorField::zero(const Chart& chart) { return {chart, std::vector<Expr>(chart.dim(), Expr(0))}; }

VectorField VectorField::coordinate(const Chart& chart, std::string_view name) {
  std::vector<Expr> c(chart.dim(), Expr(0));
  c[chart.index(name)] = Expr(1);
  return {chart, std::move(c)};
}

bool VectorField::is_zero() const {
  return std::all_of(coefficients_.begin(), coefficients_.end(), [](const Expr& e) { return e.is_zero(); });
}

Expr VectorField::apply(const Expr& f) const {
  std::vector<Expr> terms;
  for (std::size_t i = 0; i < chart_.dim(); ++i) {
    if (coefficients_[i].is_zero()) continue;
    terms.push_back(coefficients_[i] * diff(f, chart_[i]));
  }
  return normalize(Expr::sum(std::move(terms)));
}

VectorField VectorField::operator+(const VectorField& o) const {
  require_same_chart(chart_, o.chart_, "vector field sum");
  std::vector<Expr> c(chart_.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coefficients_[i] + o.coefficients_[i];
  return {chart_, std::move(c)};
}

VectorField VectorField::operator-(const VectorField& o) const { return *this + o.scaled(Expr(-1)); }

VectorField VectorField::scaled(const Expr& f) const {
  std::vector<Expr> c(chart_.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f * coefficients_[i];
  return {chart_, std::move(c)};
}

// ---------------------------------------------------------------------------

KForm::KForm(Chart chart, int degree) : chart_(std::move(chart)), degree_(degree) {
  if (degree < 0) throw DomainError("negative form degree");
}

KForm::KForm(Chart chart, int degree, const Terms& terms) : KForm(std::move(chart), degree) {
  for (const auto& [index, coeff] : terms) {
    if (static_cast<int>(index.size()) != degree_) throw DomainError("multi-index length differs from degree");
    for (std::size_t i = 0; i < index.size(); ++i) {
      if (index[i] < 0 || static_cast<std::size_t>(index[i]) >= chart_.dim()) {
        throw DomainError("multi-index out of range");
      }
      if (i > 0 && index[i] <= index[i - 1]) throw DomainError("multi-index must be strictly increasing");
    }
    Expr c = normalize(coeff);
    if (!c.is_zero()) terms_[index] = std::move(c);
  }
  if (degree_ > static_cast<int>(chart_.dim()) && !terms_.empty()) throw DomainError("form degree exceeds dimension");
}

KForm KForm::function(const Chart& chart, const Expr& f) { return {chart, 0, {{MultiIndex{}, f}}}; }

KForm KForm::differential(const Chart& chart, std::string_view name) {
  return {chart, 1, {{MultiIndex{static_cast<int>(chart.index(name))}, Expr(1)}}};
}

KForm KForm::one_form(const Chart& chart, const std::vector<Expr>& coefficients) {
  if (coefficients.size() != chart.dim()) throw DomainError("1-form needs one coefficient per coordinate");
  Terms t;
  for (std::size_t i = 0; i < coefficients.size(); ++i) t[{static_cast<int>(i)}] = coefficients[i];
  return {chart, 1, t};
}

Expr KForm::coefficient(const MultiIndex& index) const {
  auto it = terms_.find(index);
  return it == terms_.end() ? Expr(0) : it->second;
}

std::vector<Expr> KForm::covector() const {
  if (degree_ != 1) throw DomainError("covector of a form of degree " + std::to_string(degree_));
  std::vector<Expr> out(chart_.dim(), Expr(0));
  for (const auto& [index, c] : terms_) out[static_cast<std::size_t>(index[0])] = c;
  return out;
}

KForm KForm::operator+(const KForm& o) const {
  require_same_chart(chart_, o.chart_, "form sum");
  if (degree_ != o.degree_) throw DomainError("sum of forms of different degree");
  Terms t = terms_;
  for (const auto& [index, c] : o.terms_) {
    auto it = t.find(index);
    if (it == t.end()) t[index] = c;
    else it->second = it->second + c;
  }
  return {chart_, degree_, t};
}

KForm KForm::operator-(const KForm& o) const { return *this + o.scaled(Expr(-1)); }

KForm KForm::scaled(const Expr& f) const {
  Terms t;
  for (const auto& [index, c] : terms_) t[index] = f * c;
  return {chart_, degree_, t};
}

// ---------------------------------------------------------------------------

SmoothMap::SmoothMap(Chart source, Chart target, std::vector<Expr> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  if (components_.size() != target_.dim()) throw DomainError("smooth map needs one component per target coordinate");
  for (auto& c : components_) c = normalize(c);
}

SmoothMap SmoothMap::identity(const Chart& chart) {
  std::vector<Expr> c;
  for (const auto& name : chart.coordinates()) c.push_back(sym(name));
  return {chart, chart, std::move(c)};
}

namespace {

Bindings target_bindings(const SmoothMap& f) {
  Bindings b;
  for (std::size_t i = 0; i < f.target().dim(); ++i) b.bind(f.target()[i], f.components()[i]);
  return b;
}

// Sign of sorting `index` (distinct entries); 0 when an entry repeats.
int sort_sign(MultiIndex& index) {
  int sign = 1;
  for (std::size_t i = 1; i < index.size(); ++i) {
    for (std::size_t j = i; j > 0 && index[j - 1] >= index[j]; --j) {
      if (index[j - 1] == index[j]) return 0;
      std::swap(index[j - 1], index[j]);
      sign = -sign;
    }
  }
  return sign;
}

}  // namespace

SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner) {
  require_same_chart(outer.source(), inner.target(), "compose");
  Bindings b;
  for (std::size_t i = 0; i < inner.target().dim(); ++i) b.bind(inner.target()[i], inner.components()[i]);
  std::vector<Expr> c;
  for (const auto& comp : outer.components()) c.push_back(substitute(comp, b));
  return {inner.source(), outer.target(), std::move(c)};
}

Expr pair(const KForm& omega, const VectorField& x) {
  require_same_chart(omega.chart(), x.chart(), "pair");
  if (omega.degree() != 1) throw DomainError("pair expects a 1-form");
  std::vector<Expr> terms;
  for (const auto& [index, c] : omega.terms()) terms.push_back(c * x[static_cast<std::size_t>(index[0])]);
  return normalize(Expr::sum(std::move(terms)));
}

Expr evaluate(const KForm& omega, std::span<const VectorField> fields) {
  if (static_cast<int>(fields.size()) != omega.degree()) throw DomainError("evaluate: need one field per slot");
  KForm current = omega;
  for (const auto& f : fields) current = interior_product(f, current);
  return current.coefficient({});
}

VectorField bracket(const VectorField& x, const VectorField& y) {
  require_same_chart(x.chart(), y.chart(), "bracket");
  std::vector<Expr> c(x.chart().dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.apply(y[i]) - y.apply(x[i]);
  return {x.chart(), std::move(c)};
}

KForm exterior_derivative(const KForm& omega) {
  const Chart& chart = omega.chart();
  if (omega.degree() >= static_cast<int>(chart.dim())) {
    throw DomainError("exterior derivative of a top-degree form");
  }
  std::map<MultiIndex, std::vector<Expr>> acc;
  for (const auto& [index, c] : omega.terms()) {
    for (std::size_t i = 0; i < chart.dim(); ++i) {
      const int k = static_cast<int>(i);
      if (std::find(index.begin(), index.end(), k) != index.end()) continue;
      const Expr partial = diff(c, chart[i]);
      if (partial.is_zero()) continue;
      MultiIndex out{k};
      out.insert(out.end(), index.begin(), index.end());
      const int sign = sort_sign(out);
      acc[out].push_back(sign > 0 ? partial : -partial);
    }
  }
  KForm::Terms t;
  for (auto& [index, parts] : acc) t[index] = Expr::sum(std::move(parts));
  return {chart, omega.degree() + 1, t};
}

KForm interior_product(const VectorField& x, const KForm& omega) {
  require_same_chart(x.chart(), omega.chart(), "interior product");
  if (omega.degree() == 0) throw DomainError("interior product of a 0-form");
  std::map<MultiIndex, std::vector<Expr>> acc;
  for (const auto& [index, c] : omega.terms()) {
    for (std::size_t s = 0; s < index.size(); ++s) {
      const Expr& xs = x[static_cast<std::size_t>(index[s])];
      if (xs.is_zero()) continue;
      MultiIndex rest = index;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(s));
      const Expr term = xs * c;
      acc[rest].push_back(s % 2 == 0 ? term : -term);
    }
  }
  KForm::Terms t;
  for (auto& [index, parts] : acc) t[index] = Expr::sum(std::move(parts));
  return {x.chart(), omega.degree() - 1, t};
}

KForm lie_derivative(const VectorField& x, const KForm& omega) {
  require_same_chart(x.chart(), omega.chart(), "lie derivative");
  if (omega.degree() == 0) return KForm::function(x.chart(), x.apply(omega.coefficient({})));
  const bool top = omega.degree() >= static_cast<int>(x.chart().dim());
  KForm result = exterior_derivative(interior_product(x, omega));
  if (!top) result = result + interior_product(x, exterior_derivative(omega));
  return result;
}

KForm wedge(const KForm& a, const KForm& b) {
  require_same_chart(a.chart(), b.chart(), "wedge");
  const int degree = a.degree() + b.degree();
  if (degree > static_cast<int>(a.chart().dim())) return {a.chart(), degree};
  std::map<MultiIndex, std::vector<Expr>> acc;
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      MultiIndex out = ia;
      out.insert(out.end(), ib.begin(), ib.end());
      const int sign = sort_sign(out);
      if (sign == 0) continue;
      const Expr term = ca * cb;
      acc[out].push_back(sign > 0 ? term : -term);
    }
  }
  KForm::Terms t;
  for (auto& [index, parts] : acc) t[index] = Expr::sum(std::move(parts));
  return {a.chart(), degree, t};
}

KForm pullback(const SmoothMap& f, const KForm& omega) {
  require_same_chart(f.target(), omega.chart(), "pullback");
  const Chart& src = f.source();
  const Bindings b = target_bindings(f);
  std::vector<KForm> dF;
  for (const auto& comp : f.components()) {
    std::vector<Expr> c;
    for (const auto& name : src.coordinates()) c.push_back(diff(comp, name));
    dF.push_back(KForm::one_form(src, c));
  }
  KForm result(src, omega.degree());
  for (const auto& [index, c] : omega.terms()) {
    KForm piece = KForm::function(src, substitute(c, b));
    for (int j : index) piece = wedge(piece, dF[static_cast<std::size_t>(j)]);
    result = result + piece;
  }
  return result;
}

// ---------------------------------------------------------------------------

namespace {

bool leading_negative(const Expr& e) {
  if (e.is_rational()) return sgn(e.value()) < 0;
  if (e.kind() == Kind::Product) return e.children().front().is_rational() && sgn(e.children().front().value()) < 0;
  if (e.kind() == Kind::Sum) return leading_negative(e.children().front());
  return false;
}

void append_term(std::string& out, const Expr& coeff, const std::string& basis) {
  const bool negative = leading_negative(coeff);
  const Expr magnitude = negative ? normalize(-coeff) : coeff;
  if (out.empty()) out += negative ? "-" : "";
  else out += negative ? " - " : " + ";
  if (magnitude.is_one()) {
    out += basis;
    return;
  }
  const std::string text = print(magnitude);
  if (magnitude.kind() == Kind::Sum) out += "(" + text + ")";
  else out += text;
  out += "*" + basis;
}

}  // namespace

std::string print(const VectorField& x) {
  std::string out;
  for (std::size_t i = 0; i < x.chart().dim(); ++i) {
    if (!x[i].is_zero()) append_term(out, x[i], "D" + x.chart()[i]);
  }
  return out.empty() ? "0" : out;
}

std::string print(const KForm& omega) {
  if (omega.degree() == 0) return print(omega.coefficient({}));
  std::string out;
  for (const auto& [index, c] : omega.terms()) {
    std::string basis;
    for (std::size_t k = 0; k < index.size(); ++k) {
      if (k > 0) basis += "/\\";
      basis += "d" + omega.chart()[static_cast<std::size_t>(index[k])];
    }
    append_term(out, c, basis);
  }
  return out.empty() ? "0" : out;
}

}  // namespace dgeom
