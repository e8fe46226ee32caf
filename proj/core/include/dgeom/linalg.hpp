#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dgeom/algebra.hpp"
#include "dgeom/expr.hpp"

namespace dgeom {

using ExprVector = std::vector<Expr>;

/// Dense row-major matrix over the field of rational functions. Entries are
/// kept normalized.
class ExprMatrix {
 public:
  ExprMatrix(std::size_t rows, std::size_t cols);
  static ExprMatrix from_rows(const std::vector<ExprVector>& rows);
  static ExprMatrix from_columns(const std::vector<ExprVector>& columns);
  static ExprMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Expr& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, const Expr& value);

  ExprVector row(std::size_t r) const;
  ExprVector column(std::size_t c) const;
  ExprMatrix transpose() const;

  friend bool operator==(const ExprMatrix& a, const ExprMatrix& b) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Expr> entries_;
};

/// Normalized M·v.
ExprVector multiply(const ExprMatrix& m, std::span<const Expr> v);

struct RrefResult {
  ExprMatrix matrix;
  std::vector<std::size_t> pivots;
  GenericityLedger ledger;
};

/// Reduced row-echelon form. For each column the first row whose entry is
/// NonZero becomes the pivot; a column whose only candidates are
/// UnresolvedZero throws UnresolvedZeroError. Pivot numerators and
/// denominators, and denominators cancelled along the way, go to the ledger.
RrefResult rref(const ExprMatrix& m);

struct RankResult {
  std::size_t rank = 0;
  GenericityLedger ledger;
};

/// Rank at a generic point; the ledger lists where it may drop.
RankResult rank(const ExprMatrix& m);

/// Basis of the right nullspace, one vector per free column.
std::vector<ExprVector> nullspace(const ExprMatrix& m);
std::vector<ExprVector> nullspace(const ExprMatrix& m, GenericityLedger& ledger);

struct Membership {
  bool in_span = false;
  ExprVector coefficients;  // target = sum coefficients[i] * basis[i] when in_span
  ExprVector witness;       // functional killing every basis vector but not the target
  GenericityLedger ledger;
};

/// Decides target ∈ span(basis) over the rational-function field.
Membership solve_membership(const std::vector<ExprVector>& basis, const ExprVector& target);

}  // namespace dgeom
