#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dgeom/algebra.hpp"
#include "dgeom/distribution.hpp"
#include "dgeom/evaluate.hpp"
#include "dgeom/geometry.hpp"
#include "dgeom/symmetry.hpp"

namespace dgeom {

// --- symbolic models --------------------------------------------------------

/// Cartan distribution of the ODE p_{k-1}' = f on (x, p0, ..., p{k-1}).
struct CartanModel {
  int order = 0;
  Expr f;
  Chart chart;
  VectorField field;  // Dx + p1*Dp0 + ... + f*Dp{k-1}
  std::vector<KForm> coforms;  // dp_i - p_{i+1} dx, dp_{k-1} - f dx
  Distribution distribution;
};

/// `f` may use the chart coordinates and the listed parameters.
CartanModel cartan_model(int k, const Expr& f, const std::vector<std::string>& parameters = {});

/// Coordinates x, y, u, p, q, r, t of the second-order jet model.
const Chart& jet_chart();

/// Jet model of u_xy = F(x, y, u, u_x, u_y).
struct FGordonModel {
  Expr F;
  Chart chart;
  std::vector<KForm> coforms;         // du - p dx - q dy, dp - r dx - F dy, dq - F dx - t dy
  std::vector<VectorField> generators;  // X1, X2, Dr, Dt
  Distribution distribution;
};

/// `F` may use x, y, u, p, q and the listed parameters.
FGordonModel fgordon_model(const Expr& F, const std::vector<std::string>& parameters = {});

/// F = a*u + b*u^3 with the three shuffling generators in printed form.
struct KleinGordonInstance {
  Expr a;
  Expr b;
  FGordonModel model;
  VectorField x1;
  VectorField x2;
  VectorField x3;
};

KleinGordonInstance klein_gordon(const Expr& a, const Expr& b);

struct KleinGordonParameters {
  Expr a;
  Expr b;
  GenericityLedger ledger;
};

/// u_tt - alpha^2 u_xx + gamma^2 u = beta u^3 in light-cone form:
/// a = -(gamma/alpha)^2, b = beta/alpha^2.
KleinGordonParameters kg_from_physical(const Expr& alpha, const Expr& beta, const Expr& gamma);

/// Residual of the condition on a point symmetry (X, Y, U)(x, y, u) of
/// u_xy = F, expanded: left side minus X F_x + Y F_y + U F_u.
Expr point_symmetry_residual(const Expr& F, const Expr& X, const Expr& Y, const Expr& U);

struct ShuffleRepresentative {
  VectorField field;
  GenericityLedger ledger;
};

/// The vertical representative (U - pX - qY) Du + (P - rX - FY) Dp +
/// (Q - FX - tY) Dq of the point field (X, Y, U).
ShuffleRepresentative shuffle_representative(const Expr& F, const Expr& X, const Expr& Y, const Expr& U);

// --- numeric harness --------------------------------------------------------

struct GridSpec {
  double x_min = -1;
  double x_max = 1;
  double y_min = -1;
  double y_max = 1;
  std::size_t nx = 101;
  std::size_t ny = 101;
};

/// Row-major samples on a GridSpec, value(i, j) at (x_i, y_j).
class GridFunction {
 public:
  GridFunction() = default;
  explicit GridFunction(const GridSpec& spec) : spec_(spec), values_(spec.nx * spec.ny, 0.0) {}

  const GridSpec& spec() const { return spec_; }
  double& operator()(std::size_t i, std::size_t j) { return values_[i * spec_.ny + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * spec_.ny + j]; }
  double x(std::size_t i) const;
  double y(std::size_t j) const;
  double hx() const;
  double hy() const;
  /// Boundary layers where the samples are not valid (after differencing).
  std::size_t margin = 0;

 private:
  GridSpec spec_;
  std::vector<double> values_;
};

/// Accuracy order of the central difference stencils: 2, 4 or 6.
inline constexpr int kDefaultStencilOrder = 6;

GridFunction sample(const Expr& e, const GridSpec& spec, const NumericPoint& constants = {});
GridFunction central_dx(const GridFunction& f, int order = kDefaultStencilOrder);
GridFunction central_dy(const GridFunction& f, int order = kDefaultStencilOrder);

/// Samples of a candidate solution h(x, y) and its 2-jet. Partials come
/// from symbolic differentiation when the closed form is known, else from
/// central differences.
struct SolutionGrid {
  GridSpec spec;
  GridFunction h, hx, hy, hxx, hyy;
  bool exact_partials = false;

  static SolutionGrid from_expression(const Expr& h, const GridSpec& spec, const NumericPoint& constants = {});
  static SolutionGrid from_samples(const GridFunction& h, int order = kDefaultStencilOrder);
};

/// Values of an expression in (x, y, u, p, q, r, t) along the prolonged graph.
GridFunction on_graph(const Expr& e, const SolutionGrid& grid, const NumericPoint& constants = {});

/// max |w_xy - F(x, y, w, w_x, w_y)| over valid interior points.
double pde_residual(const Expr& F, const GridFunction& w, const NumericPoint& constants = {},
                    int order = kDefaultStencilOrder);

/// max |D_x D_y phi - F_u phi - F_p D_x phi - F_q D_y phi| on the graph.
double linearized_residual(const Expr& F, const SolutionGrid& grid, const Expr& phi, const NumericPoint& constants = {},
                           int order = kDefaultStencilOrder);

struct TransportRow {
  double s = 0;
  double max_residual = 0;
  /// Log-log slope against the previous row; absent on the first row.
  std::optional<double> empirical_order;
};

/// Transports the solution along a vertical flow and reports the PDE
/// residual of the new u for every s.
std::vector<TransportRow> transport_solution(const Expr& F, const FlowMap& flow, const SolutionGrid& grid,
                                             const std::vector<double>& s_values, const NumericPoint& constants = {},
                                             int order = kDefaultStencilOrder);

/// Classical RK4 endpoint of the integral curve of X through `start`.
std::vector<double> integrate_flow_numeric(const VectorField& x, const std::vector<double>& start, double t_final,
                                           std::size_t steps, const NumericPoint& constants = {});

}  // namespace dgeom
