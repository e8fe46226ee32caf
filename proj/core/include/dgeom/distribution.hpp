#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dgeom/algebra.hpp"
#include "dgeom/geometry.hpp"
#include "dgeom/linalg.hpp"

namespace dgeom {

/// A tangent distribution with its annihilator. Either presentation can be
/// given; the other is derived (the annihilator lazily, once).
class Distribution {
 public:
  /// Empty distribution on the empty chart.
  Distribution();
  /// Generators must be independent at generic points.
  Distribution(Chart chart, std::vector<VectorField> generators);
  /// Tangent generators are computed as the common kernel of `coforms`.
  static Distribution from_coforms(Chart chart, std::vector<KForm> coforms);
  /// Both presentations given; checks pairings vanish and counts add up.
  static Distribution with_coforms(Chart chart, std::vector<VectorField> generators, std::vector<KForm> coforms);

  const Chart& chart() const { return chart_; }
  std::size_t rank() const { return generators_.size(); }
  const std::vector<VectorField>& generators() const { return generators_; }
  const std::vector<KForm>& coforms() const;
  /// Conditions assumed while deriving either presentation.
  GenericityLedger ledger() const;

 private:
  struct Annihilator;

  Chart chart_;
  std::vector<VectorField> generators_;
  GenericityLedger ledger_;
  std::shared_ptr<Annihilator> annihilator_;
};

/// dim - m independent 1-forms vanishing on every generator.
std::vector<KForm> annihilator(const Distribution& d);
/// Vector fields spanning the common kernel of independent 1-forms.
std::vector<VectorField> coform_kernel(const Chart& chart, const std::vector<KForm>& forms);

/// Coefficients of `x` over the generators, or a NotInSpan certificate.
Membership contains_vf(const Distribution& d, const VectorField& x);

struct BracketWitness {
  std::size_t first = 0;   // generator index, or the candidate for symmetry checks
  std::size_t second = 0;  // generator index
  VectorField bracket;
};

struct InvolutivityResult {
  bool involutive = true;
  std::optional<BracketWitness> witness;
  GenericityLedger ledger;
};

/// Frobenius check on generator pairs. Among failing pairs the one with the
/// simplest bracket is reported.
InvolutivityResult is_involutive(const Distribution& d);

struct SymmetryCheck {
  bool symmetry = true;
  /// Failing generator and [X, X_j]; `first` is unused.
  std::optional<BracketWitness> witness;
  GenericityLedger ledger;
};

/// [X, X_j] in D for every generator X_j.
SymmetryCheck is_symmetry_brackets(const Distribution& d, const VectorField& x);

struct FormsWitness {
  std::size_t form = 0;
  std::size_t generator = 0;
  Expr value;  // (L_X omega^i)(X_j)
};

struct FormsSymmetryCheck {
  bool symmetry = true;
  std::optional<FormsWitness> witness;
};

/// (L_X omega^i)(X_j) = 0 for every coform and tangent generator.
FormsSymmetryCheck is_symmetry_forms(const Distribution& d, const VectorField& x);

struct FiniteSymmetryCheck {
  bool symmetry = true;
  std::optional<std::size_t> failing_form;
  /// Result of the wedge criterion when it was evaluated (dim <= 7).
  std::optional<bool> wedge_symmetry;
  GenericityLedger ledger;
};

/// F^* omega^i in span{omega^j} for every coform generator, cross-checked by
/// F^* omega^i /\ omega^1 /\ ... /\ omega^n = 0.
FiniteSymmetryCheck is_finite_symmetry(const Distribution& d, const SmoothMap& f);

struct Reduction {
  VectorField representative;
  std::vector<Expr> coefficients;  // X = representative + sum c_j X_j
  GenericityLedger ledger;
};

/// Non-pivot columns of the generator matrix (the vertical coordinates of
/// jet models).
std::vector<std::size_t> default_complement(const Distribution& d);
/// The representative of X mod D supported on the `complement` coordinates.
Reduction reduce_mod(const Distribution& d, const VectorField& x, const std::vector<std::size_t>& complement);

struct Lift {
  bool liftable = false;
  /// W + sum c_k X_k, a symmetry of D, when liftable.
  VectorField symmetry;
  std::vector<Expr> coefficients;
  GenericityLedger ledger;
};

/// Looks for a symmetry in the class of W modulo D. Conditions on
/// Z = W + sum c_k X_k are linear in the c_k modulo D, so this is one
/// membership problem; not liftable means W represents no symmetry.
Lift lift_to_symmetry(const Distribution& d, const VectorField& w);

struct SymmetryClass {
  enum class Kind { Characteristic, ShufflingOnly, NotASymmetry };

  Kind kind = Kind::NotASymmetry;
  /// ShufflingOnly: the vertical representative.
  VectorField representative;
  /// Characteristic: coefficients over the generators.
  std::vector<Expr> coefficients;
  /// NotASymmetry: failing generator and bracket.
  std::optional<BracketWitness> witness;
  GenericityLedger ledger;
};

std::string to_string(SymmetryClass::Kind kind);

SymmetryClass classify(const Distribution& d, const VectorField& x);
SymmetryClass classify(const Distribution& d, const VectorField& x, const std::vector<std::size_t>& complement);

}  // namespace dgeom
