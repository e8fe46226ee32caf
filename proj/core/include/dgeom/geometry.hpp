#pragma once

#include <cstddef>
#include <map>
#include <ostream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dgeom/expr.hpp"

namespace dgeom {

/// Ordered coordinate symbols of a single chart.
class Chart {
 public:
  Chart() = default;
  explicit Chart(std::vector<std::string> coordinates);

  std::size_t dim() const { return coordinates_.size(); }
  const std::vector<std::string>& coordinates() const { return coordinates_; }
  const std::string& operator[](std::size_t i) const { return coordinates_[i]; }
  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws DomainError for a name outside the chart.
  std::size_t index(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name).has_value(); }

  friend bool operator==(const Chart&, const Chart&) = default;

 private:
  std::vector<std::string> coordinates_;
};

void require_same_chart(const Chart& a, const Chart& b, std::string_view what);

class VectorField {
 public:
  VectorField() = default;
  VectorField(Chart chart, std::vector<Expr> coefficients);
  static VectorField zero(const Chart& chart);
  /// The coordinate field ∂/∂name.
  static VectorField coordinate(const Chart& chart, std::string_view name);

  const Chart& chart() const { return chart_; }
  const std::vector<Expr>& coefficients() const { return coefficients_; }
  const Expr& operator[](std::size_t i) const { return coefficients_[i]; }
  const Expr& component(std::string_view coordinate) const { return coefficients_[chart_.index(coordinate)]; }
  bool is_zero() const;

  /// X(f) = sum_i X^i ∂f/∂x^i, normalized.
  Expr apply(const Expr& f) const;

  VectorField operator+(const VectorField& o) const;
  VectorField operator-(const VectorField& o) const;
  VectorField scaled(const Expr& f) const;

  friend bool operator==(const VectorField&, const VectorField&) = default;

 private:
  Chart chart_;
  std::vector<Expr> coefficients_;
};

/// Strictly increasing 0-based coordinate indices.
using MultiIndex = std::vector<int>;

class KForm {
 public:
  using Terms = std::map<MultiIndex, Expr>;

  KForm() = default;
  /// Zero form. Degrees above the chart dimension are allowed only for the
  /// zero form (wedge products that overflow).
  KForm(Chart chart, int degree);
  /// Nonincreasing or repeated indices are rejected; zero coefficients dropped.
  KForm(Chart chart, int degree, const Terms& terms);

  static KForm function(const Chart& chart, const Expr& f);
  /// d(name).
  static KForm differential(const Chart& chart, std::string_view name);
  static KForm one_form(const Chart& chart, const std::vector<Expr>& coefficients);

  const Chart& chart() const { return chart_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  Expr coefficient(const MultiIndex& index) const;
  bool is_zero() const { return terms_.empty(); }
  /// Dense coefficient list of a 1-form.
  std::vector<Expr> covector() const;

  KForm operator+(const KForm& o) const;
  KForm operator-(const KForm& o) const;
  KForm scaled(const Expr& f) const;

  friend bool operator==(const KForm&, const KForm&) = default;

 private:
  Chart chart_;
  int degree_ = 0;
  Terms terms_;
};

/// Coordinate expression of a map between charts.
class SmoothMap {
 public:
  SmoothMap() = default;
  SmoothMap(Chart source, Chart target, std::vector<Expr> components);
  static SmoothMap identity(const Chart& chart);

  const Chart& source() const { return source_; }
  const Chart& target() const { return target_; }
  const std::vector<Expr>& components() const { return components_; }

  friend bool operator==(const SmoothMap&, const SmoothMap&) = default;

 private:
  Chart source_;
  Chart target_;
  std::vector<Expr> components_;
};

/// outer ∘ inner.
SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner);

Expr pair(const KForm& omega, const VectorField& x);
/// ω(X_1, ..., X_k).
Expr evaluate(const KForm& omega, std::span<const VectorField> fields);
VectorField bracket(const VectorField& x, const VectorField& y);
/// Throws DomainError on top-degree input.
KForm exterior_derivative(const KForm& omega);
/// Contraction in the first slot; throws DomainError on 0-forms.
KForm interior_product(const VectorField& x, const KForm& omega);
/// ι_X dω + d(ι_X ω); X(f) on 0-forms.
KForm lie_derivative(const VectorField& x, const KForm& omega);
KForm wedge(const KForm& a, const KForm& b);
KForm pullback(const SmoothMap& f, const KForm& omega);

/// "-p*Du + Dx" style listing; "0" for the zero field.
std::string print(const VectorField& x);
/// "du - p*dx", "dx/\dp"; the coefficient alone for 0-forms.
std::string print(const KForm& omega);

inline std::ostream& operator<<(std::ostream& os, const VectorField& x) { return os << print(x); }
inline std::ostream& operator<<(std::ostream& os, const KForm& omega) { return os << print(omega); }

}  // namespace dgeom
