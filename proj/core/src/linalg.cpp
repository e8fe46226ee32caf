#include "dgeom/linalg.hpp"

#include <algorithm>

#include "dgeom/errors.hpp"
#include "dgeom/parse.hpp"

namespace dgeom {

ExprMatrix::ExprMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {
  if (rows == 0 || cols == 0) throw DomainError("matrix dimensions must be positive");
}

ExprMatrix ExprMatrix::from_rows(const std::vector<ExprVector>& rows) {
  if (rows.empty()) throw DomainError("matrix needs at least one row");
  ExprMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw DomainError("ragged matrix rows");
    for (std::size_t c = 0; c < m.cols_; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

ExprMatrix ExprMatrix::from_columns(const std::vector<ExprVector>& columns) {
  return from_rows(columns).transpose();
}

ExprMatrix ExprMatrix::identity(std::size_t n) {
  ExprMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, Expr(1));
  return m;
}

void ExprMatrix::set(std::size_t r, std::size_t c, const Expr& value) { entries_[r * cols_ + c] = normalize(value); }

ExprVector ExprMatrix::row(std::size_t r) const {
  return {entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

ExprVector ExprMatrix::column(std::size_t c) const {
  ExprVector out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
  return out;
}

ExprMatrix ExprMatrix::transpose() const {
  ExprMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.entries_[c * rows_ + r] = (*this)(r, c);
  }
  return t;
}

ExprVector multiply(const ExprMatrix& m, std::span<const Expr> v) {
  if (v.size() != m.cols()) throw DomainError("matrix-vector size mismatch");
  ExprVector out;
  out.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<Expr> terms;
    for (std::size_t c = 0; c < m.cols(); ++c) terms.push_back(m(r, c) * v[c]);
    out.push_back(normalize(Expr::sum(std::move(terms))));
  }
  return out;
}

namespace {

// Multiplies each row by the product of its distinct entry denominators so
// that elimination runs over polynomials.
void clear_denominators(ExprMatrix& m, GenericityLedger& ledger) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<Expr> dens;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Expr d = as_fraction(m(r, c)).denominator;
      if (!d.is_one() && std::find(dens.begin(), dens.end(), d) == dens.end()) dens.push_back(d);
    }
    if (dens.empty()) continue;
    const Expr scale = normalize(Expr::product(dens));
    for (const auto& d : dens) ledger.assume_nonzero(d);
    for (std::size_t c = 0; c < m.cols(); ++c) m.set(r, c, m(r, c) * scale);
  }
}

}  // namespace

// Fraction-free Gauss-Jordan elimination: after each pivot step every row is
// updated as (p*a_ij - a_ic*a_pj) / previous_pivot, which is an exact
// polynomial division. All pivots end up equal to the last one, so the
// reduced form divides by it once at the end.
RrefResult rref(const ExprMatrix& input) {
  RrefResult out{input, {}, {}};
  ExprMatrix& m = out.matrix;
  clear_denominators(m, out.ledger);
  Expr previous(1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::optional<std::size_t> pivot;
    std::optional<std::size_t> unresolved;
    for (std::size_t r = row; r < m.rows(); ++r) {
      const ZeroStatus s = is_zero(m(r, col));
      if (s.nonzero()) {
        pivot = r;
        break;
      }
      if (s.unresolved() && !unresolved) unresolved = r;
    }
    if (!pivot) {
      if (unresolved) {
        throw UnresolvedZeroError("cannot decide pivot candidate " + print(m(*unresolved, col)) + " in column " +
                                  std::to_string(col));
      }
      continue;
    }
    if (*pivot != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        const Expr tmp = m(row, c);
        m.set(row, c, m(*pivot, c));
        m.set(*pivot, c, tmp);
      }
    }
    const Expr p = m(row, col);
    // The classical pivot is p / previous.
    const Fraction ratio = as_fraction(exact_quotient(p, previous));
    out.ledger.assume_nonzero(ratio.numerator);
    out.ledger.assume_nonzero(ratio.denominator);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row) continue;
      const Expr factor = m(r, col);
      for (std::size_t c = 0; c < m.cols(); ++c) {
        Expr updated = p * m(r, c);
        if (!factor.is_zero() && !m(row, c).is_zero()) updated = updated - factor * m(row, c);
        m.set(r, c, exact_quotient(updated, previous));
      }
    }
    previous = p;
    out.pivots.push_back(col);
    ++row;
  }
  for (std::size_t r = 0; r < out.pivots.size(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c == out.pivots[r]) {
        m.set(r, c, Expr(1));
      } else if (!m(r, c).is_zero()) {
        NormalForm n = normalize_tracked(m(r, c) / previous);
        out.ledger.merge(n.ledger);
        m.set(r, c, n.expr);
      }
    }
  }
  return out;
}

RankResult rank(const ExprMatrix& m) {
  RrefResult r = rref(m);
  return {r.pivots.size(), std::move(r.ledger)};
}

std::vector<ExprVector> nullspace(const ExprMatrix& m, GenericityLedger& ledger) {
  const RrefResult r = rref(m);
  ledger.merge(r.ledger);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : r.pivots) is_pivot[p] = true;
  std::vector<ExprVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    ExprVector v(m.cols(), Expr(0));
    v[free] = Expr(1);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = normalize(-r.matrix(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<ExprVector> nullspace(const ExprMatrix& m) {
  GenericityLedger ignored;
  return nullspace(m, ignored);
}

Membership solve_membership(const std::vector<ExprVector>& basis, const ExprVector& target) {
  Membership out;
  const std::size_t dim = target.size();
  for (const auto& b : basis) {
    if (b.size() != dim) throw DomainError("membership: vectors of different dimension");
  }
  if (basis.empty()) {
    out.in_span = true;
    for (const auto& t : target) {
      const ZeroStatus s = is_zero(t);
      if (s.unresolved()) throw UnresolvedZeroError("cannot decide target component " + print(t));
      out.in_span = out.in_span && s.zero();
    }
    if (!out.in_span) {
      out.witness.assign(dim, Expr(0));
      for (std::size_t i = 0; i < dim; ++i) {
        if (!normalize(target[i]).is_zero()) {
          out.witness[i] = Expr(1);
          break;
        }
      }
    }
    return out;
  }

  std::vector<ExprVector> columns = basis;
  columns.push_back(target);
  const RrefResult r = rref(ExprMatrix::from_columns(columns));
  out.ledger.merge(r.ledger);
  const std::size_t m = basis.size();
  out.in_span = r.pivots.empty() || r.pivots.back() != m;
  if (out.in_span) {
    out.coefficients.assign(m, Expr(0));
    for (std::size_t i = 0; i < r.pivots.size(); ++i) out.coefficients[r.pivots[i]] = r.matrix(i, m);
    return out;
  }

  // Witness: a left-null vector of the basis matrix that does not kill the
  // target. One exists because the target raised the rank.
  const auto left = nullspace(ExprMatrix::from_rows(basis), out.ledger);
  bool unresolved = false;
  for (const auto& lambda : left) {
    std::vector<Expr> terms;
    for (std::size_t i = 0; i < dim; ++i) terms.push_back(lambda[i] * target[i]);
    const ZeroStatus s = is_zero(Expr::sum(std::move(terms)));
    if (s.nonzero()) {
      out.witness = lambda;
      return out;
    }
    unresolved = unresolved || s.unresolved();
  }
  if (unresolved) throw UnresolvedZeroError("membership witness could not be certified");
  throw Error("membership: rank increased but no witness found");
}

}  // namespace dgeom
