#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgeom/algebra.hpp"
#include "dgeom/distribution.hpp"
#include "dgeom/geometry.hpp"

namespace dgeom {

/// Vector field whose components are concrete expressions or undetermined
/// functions of declared chart coordinates.
class SymmetryAnsatz {
 public:
  struct Slot {
    std::optional<Expr> concrete;
    std::string function;
    std::vector<std::string> args;
  };

  /// All components start at 0.
  explicit SymmetryAnsatz(Chart chart);
  static SymmetryAnsatz from_field(const VectorField& x);

  SymmetryAnsatz& set(std::string_view coordinate, const Expr& value);
  /// Arguments must be chart coordinates.
  SymmetryAnsatz& undetermined(std::string_view coordinate, std::string function, std::vector<std::string> args);

  const Chart& chart() const { return chart_; }
  const std::vector<Slot>& slots() const { return slots_; }
  /// Names of the undetermined functions in chart order.
  std::vector<std::string> functions() const;
  /// Chart coordinates that occur in no undetermined argument list.
  std::vector<std::string> collection_variables() const;
  VectorField realize() const;

 private:
  Chart chart_;
  std::vector<Slot> slots_;
};

struct DeterminingEquation {
  std::size_t form = 0;       // 0-based coform generator
  std::size_t generator = 0;  // 0-based tangent generator
  Expr monomial;              // in the collection variables, or 1
  Expr expr;                  // normalized, must vanish identically
};

struct DeterminingSystem {
  /// Identically vanishing entries are dropped.
  std::vector<DeterminingEquation> equations;
  /// Number of (form, generator) pairings before collection and dropping.
  std::size_t raw_count = 0;
  std::vector<std::string> collection_variables;
  /// Denominators cleared before collecting.
  GenericityLedger ledger;

  bool empty() const { return equations.empty(); }
  /// One "(i,j,monomial): expr" line per equation, 1-based indices.
  std::string listing() const;
};

/// (L_Z omega^i)(X_j) for every coform and tangent generator, split by
/// monomials in the collection variables. A pairing whose denominator
/// involves collection variables is replaced by its numerator.
DeterminingSystem determining_equations(const Distribution& d, const SymmetryAnsatz& z);

/// Per-equation status after substituting the bindings. Throws DomainError
/// when an undetermined function is left unbound.
std::vector<ZeroStatus> verify_candidate(const DeterminingSystem& system, const Bindings& bindings);

/// Bindings that make `z` realize to `candidate`: each undetermined slot is
/// bound to the candidate component. Throws DomainError when a component
/// depends on a coordinate outside the slot's argument list.
Bindings bindings_for(const SymmetryAnsatz& z, const VectorField& candidate);

struct FlowMap {
  Chart chart;
  std::string parameter = "s";
  /// series[i][k]: coefficient of s^k in the image of coordinate i.
  std::vector<std::vector<Expr>> series;
  std::vector<Expr> components;
  bool exact = false;
  /// Highest power present when exact, the truncation order otherwise.
  int degree = 0;
};

inline constexpr int kDefaultFlowOrder = 12;

/// Lie series sum_k s^k/k! X^k(c) per coordinate, stopping when every
/// coordinate's series terminates or at `max_order`.
FlowMap lie_series_flow(const VectorField& x, int max_order = kDefaultFlowOrder, std::string parameter = "s");
SmoothMap flow_as_map(const FlowMap& flow, const Expr& s_value);

}  // namespace dgeom
