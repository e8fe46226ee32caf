#include "dgeom/fgordon.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "dgeom/errors.hpp"
#include "dgeom/parse.hpp"

namespace dgeom {

namespace {

void require_symbols(const Expr& e, const std::vector<std::string>& allowed, std::string_view what) {
  for (const auto& s : free_symbols(e)) {
    if (std::find(allowed.begin(), allowed.end(), s) == allowed.end()) {
      throw DomainError(std::string(what) + ": unexpected symbol " + s);
    }
  }
}

std::vector<std::string> with_parameters(std::vector<std::string> names, const std::vector<std::string>& parameters) {
  names.insert(names.end(), parameters.begin(), parameters.end());
  return names;
}

Expr d(const Expr& e, const char* v) { return diff(e, std::string(v)); }

}  // namespace

CartanModel cartan_model(int k, const Expr& f, const std::vector<std::string>& parameters) {
  if (k < 1) throw DomainError("Cartan model order must be at least 1");
  std::vector<std::string> names{"x"};
  for (int i = 0; i < k; ++i) names.push_back("p" + std::to_string(i));
  require_symbols(f, with_parameters(names, parameters), "Cartan right-hand side");

  CartanModel m;
  m.order = k;
  m.f = normalize(f);
  m.chart = Chart(names);
  std::vector<Expr> coefficients{Expr(1)};
  for (int i = 1; i < k; ++i) coefficients.push_back(sym(names[static_cast<std::size_t>(i) + 1]));
  coefficients.push_back(m.f);
  m.field = VectorField(m.chart, coefficients);
  const KForm dx = KForm::differential(m.chart, "x");
  for (int i = 0; i < k; ++i) {
    const Expr next = i + 1 < k ? sym(names[static_cast<std::size_t>(i) + 2]) : m.f;
    m.coforms.push_back(KForm::differential(m.chart, names[static_cast<std::size_t>(i) + 1]) - dx.scaled(next));
  }
  m.distribution = Distribution::with_coforms(m.chart, {m.field}, m.coforms);
  return m;
}

const Chart& jet_chart() {
  static const Chart chart({"x", "y", "u", "p", "q", "r", "t"});
  return chart;
}

FGordonModel fgordon_model(const Expr& F, const std::vector<std::string>& parameters) {
  require_symbols(F, with_parameters({"x", "y", "u", "p", "q"}, parameters), "F-Gordon right-hand side");
  FGordonModel m;
  m.F = normalize(F);
  m.chart = jet_chart();
  const Chart& c = m.chart;
  auto dv = [&](const char* v) { return KForm::differential(c, v); };
  const Expr p = sym("p"), q = sym("q"), r = sym("r"), t = sym("t");
  m.coforms = {dv("u") - dv("x").scaled(p) - dv("y").scaled(q), dv("p") - dv("x").scaled(r) - dv("y").scaled(m.F),
               dv("q") - dv("x").scaled(m.F) - dv("y").scaled(t)};
  m.generators = {VectorField(c, {1, 0, p, r, m.F, 0, 0}), VectorField(c, {0, 1, q, m.F, t, 0, 0}),
                  VectorField::coordinate(c, "r"), VectorField::coordinate(c, "t")};
  m.distribution = Distribution::with_coforms(c, m.generators, m.coforms);
  return m;
}

KleinGordonInstance klein_gordon(const Expr& a, const Expr& b) {
  std::set<std::string> params;
  for (const auto& s : free_symbols(a)) params.insert(s);
  for (const auto& s : free_symbols(b)) params.insert(s);
  KleinGordonInstance k;
  k.a = normalize(a);
  k.b = normalize(b);
  const Expr u = sym("u"), p = sym("p"), q = sym("q"), r = sym("r"), t = sym("t"), x = sym("x"), y = sym("y");
  k.model = fgordon_model(a * u + b * pow(u, 3), {params.begin(), params.end()});
  const Chart& c = k.model.chart;
  // u^2 (a + b u), the coefficient as it appears in the printed generators.
  const Expr g = pow(u, 2) * (a + b * u);
  k.x1 = VectorField(c, {0, 0, p * x - q * y, -(p + y * g - r * x), q + x * g - t * y, 0, 0});
  k.x2 = VectorField(c, {0, 0, q, g, t, 0, 0});
  k.x3 = VectorField(c, {0, 0, p, r, g, 0, 0});
  return k;
}

KleinGordonParameters kg_from_physical(const Expr& alpha, const Expr& beta, const Expr& gamma) {
  const Expr al = normalize(alpha);
  if (al.is_zero()) throw DomainError("alpha must be nonzero");
  KleinGordonParameters out;
  out.ledger.assume_nonzero(al);
  out.a = normalize(-pow(gamma, 2) / pow(al, 2));
  out.b = normalize(beta / pow(al, 2));
  return out;
}

namespace {

void require_point_field(const Expr& e, std::string_view what) {
  for (const char* v : {"p", "q", "r", "t"}) {
    if (depends_on(e, v)) throw DomainError(std::string(what) + " must not depend on " + v);
  }
}

}  // namespace

Expr point_symmetry_residual(const Expr& F, const Expr& X, const Expr& Y, const Expr& U) {
  require_point_field(X, "X");
  require_point_field(Y, "Y");
  require_point_field(U, "U");
  const Expr p = sym("p"), q = sym("q");
  const Expr Fx = d(F, "x"), Fy = d(F, "y"), Fu = d(F, "u"), Fp = d(F, "p"), Fq = d(F, "q");
  const Expr lhs = Expr::sum({
      (p * Fp - F) * d(X, "x"),
      p * (p * Fp - 2 * F) * d(X, "u"),
      (q * Fq - F) * d(Y, "y"),
      q * (q * Fq - 2 * F) * d(Y, "u"),
      -Fp * d(U, "x"),
      -Fq * d(U, "y"),
      (F - p * Fp - q * Fq) * d(U, "u"),
      d(d(U, "x"), "y"),
      q * d(d(U, "x"), "u"),
      p * d(d(U, "y"), "u"),
      p * q * d(d(U, "u"), "u"),
  });
  return normalize(lhs - (X * Fx + Y * Fy + U * Fu));
}

ShuffleRepresentative shuffle_representative(const Expr& F, const Expr& X, const Expr& Y, const Expr& U) {
  require_point_field(X, "X");
  require_point_field(Y, "Y");
  require_point_field(U, "U");
  const Expr p = sym("p"), q = sym("q"), r = sym("r"), t = sym("t");
  const Expr P = normalize(-p * d(X, "x") - pow(p, 2) * d(X, "u") - q * d(Y, "x") - p * q * d(Y, "u") + d(U, "x") +
                           p * d(U, "u"));
  const NormalForm Q = normalize_tracked((p * q * d(X, "x") - pow(p, 2) * d(X, "y") + pow(q, 2) * d(Y, "x") -
                                          p * q * d(Y, "y") - q * d(U, "x") + p * d(U, "y") + q * P) /
                                         p);
  ShuffleRepresentative out;
  out.ledger.assume_nonzero(p);
  out.ledger.merge(Q.ledger);
  out.field = VectorField(jet_chart(), {0, 0, U - p * X - q * Y, P - r * X - F * Y, Q.expr - F * X - t * Y, 0, 0});
  return out;
}

// --- numeric harness --------------------------------------------------------

double GridFunction::hx() const { return (spec_.x_max - spec_.x_min) / static_cast<double>(spec_.nx - 1); }
double GridFunction::hy() const { return (spec_.y_max - spec_.y_min) / static_cast<double>(spec_.ny - 1); }
double GridFunction::x(std::size_t i) const { return spec_.x_min + static_cast<double>(i) * hx(); }
double GridFunction::y(std::size_t j) const { return spec_.y_min + static_cast<double>(j) * hy(); }

namespace {

void require_grid(const GridSpec& spec) {
  if (spec.nx < 5 || spec.ny < 5) throw DomainError("grid needs at least 5 points per direction");
  if (!(spec.x_max > spec.x_min) || !(spec.y_max > spec.y_min)) throw DomainError("empty grid domain");
}

std::span<const double> stencil(int order) {
  static const std::array<double, 3> o2{-0.5, 0.0, 0.5};
  static const std::array<double, 5> o4{1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12};
  static const std::array<double, 7> o6{-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0, 3.0 / 4, -3.0 / 20, 1.0 / 60};
  switch (order) {
    case 2:
      return o2;
    case 4:
      return o4;
    case 6:
      return o6;
    default:
      throw DomainError("stencil order must be 2, 4 or 6");
  }
}

GridFunction central(const GridFunction& f, int order, bool along_x) {
  const auto w = stencil(order);
  const std::size_t half = w.size() / 2;
  const GridSpec& spec = f.spec();
  GridFunction out(spec);
  out.margin = f.margin + half;
  if (2 * out.margin >= std::min(spec.nx, spec.ny)) throw DomainError("grid too small for the stencil");
  const double h = along_x ? f.hx() : f.hy();
  for (std::size_t i = out.margin; i + out.margin < spec.nx; ++i) {
    for (std::size_t j = out.margin; j + out.margin < spec.ny; ++j) {
      double acc = 0;
      for (std::size_t k = 0; k < w.size(); ++k) {
        acc += w[k] * (along_x ? f(i + k - half, j) : f(i, j + k - half));
      }
      out(i, j) = acc / h;
    }
  }
  return out;
}

template <typename Fn>
double max_over_valid(const GridFunction& g, std::size_t margin, Fn&& fn) {
  double worst = 0;
  for (std::size_t i = margin; i + margin < g.spec().nx; ++i) {
    for (std::size_t j = margin; j + margin < g.spec().ny; ++j) worst = std::max(worst, std::abs(fn(i, j)));
  }
  return worst;
}

NumericPoint graph_point(const SolutionGrid& g, std::size_t i, std::size_t j, const NumericPoint& constants) {
  NumericPoint pt = constants;
  pt["x"] = g.h.x(i);
  pt["y"] = g.h.y(j);
  pt["u"] = g.h(i, j);
  pt["p"] = g.hx(i, j);
  pt["q"] = g.hy(i, j);
  pt["r"] = g.hxx(i, j);
  pt["t"] = g.hyy(i, j);
  return pt;
}

}  // namespace

GridFunction sample(const Expr& e, const GridSpec& spec, const NumericPoint& constants) {
  require_grid(spec);
  GridFunction out(spec);
  NumericPoint pt = constants;
  for (std::size_t i = 0; i < spec.nx; ++i) {
    for (std::size_t j = 0; j < spec.ny; ++j) {
      pt["x"] = out.x(i);
      pt["y"] = out.y(j);
      out(i, j) = eval_numeric(e, pt);
    }
  }
  return out;
}

GridFunction central_dx(const GridFunction& f, int order) { return central(f, order, true); }
GridFunction central_dy(const GridFunction& f, int order) { return central(f, order, false); }

SolutionGrid SolutionGrid::from_expression(const Expr& h, const GridSpec& spec, const NumericPoint& constants) {
  SolutionGrid g;
  g.spec = spec;
  g.h = sample(h, spec, constants);
  g.hx = sample(diff(h, "x"), spec, constants);
  g.hy = sample(diff(h, "y"), spec, constants);
  g.hxx = sample(diff(diff(h, "x"), "x"), spec, constants);
  g.hyy = sample(diff(diff(h, "y"), "y"), spec, constants);
  g.exact_partials = true;
  return g;
}

SolutionGrid SolutionGrid::from_samples(const GridFunction& h, int order) {
  require_grid(h.spec());
  SolutionGrid g;
  g.spec = h.spec();
  g.h = h;
  g.hx = central_dx(h, order);
  g.hy = central_dy(h, order);
  g.hxx = central_dx(g.hx, order);
  g.hyy = central_dy(g.hy, order);
  return g;
}

GridFunction on_graph(const Expr& e, const SolutionGrid& grid, const NumericPoint& constants) {
  GridFunction out(grid.spec);
  out.margin = std::max({grid.h.margin, grid.hx.margin, grid.hy.margin, grid.hxx.margin, grid.hyy.margin});
  for (std::size_t i = out.margin; i + out.margin < grid.spec.nx; ++i) {
    for (std::size_t j = out.margin; j + out.margin < grid.spec.ny; ++j) {
      out(i, j) = eval_numeric(e, graph_point(grid, i, j, constants));
    }
  }
  return out;
}

double pde_residual(const Expr& F, const GridFunction& w, const NumericPoint& constants, int order) {
  const GridFunction wx = central_dx(w, order);
  const GridFunction wy = central_dy(w, order);
  const GridFunction wxy = central_dy(wx, order);
  NumericPoint pt = constants;
  return max_over_valid(wxy, wxy.margin, [&](std::size_t i, std::size_t j) {
    pt["x"] = w.x(i);
    pt["y"] = w.y(j);
    pt["u"] = w(i, j);
    pt["p"] = wx(i, j);
    pt["q"] = wy(i, j);
    return wxy(i, j) - eval_numeric(F, pt);
  });
}

double linearized_residual(const Expr& F, const SolutionGrid& grid, const Expr& phi, const NumericPoint& constants,
                           int order) {
  const GridFunction ph = on_graph(phi, grid, constants);
  const GridFunction px = central_dx(ph, order);
  const GridFunction py = central_dy(ph, order);
  const GridFunction pxy = central_dy(px, order);
  const GridFunction fu = on_graph(diff(F, "u"), grid, constants);
  const GridFunction fp = on_graph(diff(F, "p"), grid, constants);
  const GridFunction fq = on_graph(diff(F, "q"), grid, constants);
  return max_over_valid(pxy, pxy.margin, [&](std::size_t i, std::size_t j) {
    return pxy(i, j) - fu(i, j) * ph(i, j) - fp(i, j) * px(i, j) - fq(i, j) * py(i, j);
  });
}

std::vector<TransportRow> transport_solution(const Expr& F, const FlowMap& flow, const SolutionGrid& grid,
                                             const std::vector<double>& s_values, const NumericPoint& constants,
                                             int order) {
  require_same_chart(jet_chart(), flow.chart, "transport");
  if (flow.components[0] != sym("x") || flow.components[1] != sym("y")) {
    throw DomainError("transport needs a vertical flow (x and y fixed)");
  }
  std::vector<TransportRow> out;
  for (double s : s_values) {
    NumericPoint pt = constants;
    pt[flow.parameter] = s;
    TransportRow row;
    row.s = s;
    row.max_residual = pde_residual(F, on_graph(flow.components[2], grid, pt), constants, order);
    if (!out.empty()) {
      const TransportRow& prev = out.back();
      if (s > 0 && prev.s > 0 && s != prev.s && row.max_residual > 0 && prev.max_residual > 0) {
        row.empirical_order = std::log(row.max_residual / prev.max_residual) / std::log(s / prev.s);
      }
    }
    out.push_back(row);
  }
  return out;
}

std::vector<double> integrate_flow_numeric(const VectorField& x, const std::vector<double>& start, double t_final,
                                           std::size_t steps, const NumericPoint& constants) {
  const Chart& c = x.chart();
  if (start.size() != c.dim()) throw DomainError("start point has the wrong dimension");
  if (steps == 0) throw DomainError("need at least one step");
  NumericPoint pt = constants;
  auto rhs = [&](const std::vector<double>& state) {
    for (std::size_t i = 0; i < c.dim(); ++i) pt[c[i]] = state[i];
    std::vector<double> out(c.dim());
    for (std::size_t i = 0; i < c.dim(); ++i) out[i] = eval_numeric(x[i], pt);
    return out;
  };
  auto axpy = [](const std::vector<double>& a, double h, const std::vector<double>& b) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + h * b[i];
    return out;
  };
  const double h = t_final / static_cast<double>(steps);
  std::vector<double> y = start;
  for (std::size_t n = 0; n < steps; ++n) {
    const auto k1 = rhs(y);
    const auto k2 = rhs(axpy(y, h / 2, k1));
    const auto k3 = rhs(axpy(y, h / 2, k2));
    const auto k4 = rhs(axpy(y, h, k3));
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  }
  return y;
}

}  // namespace dgeom
