#pragma once

// Reclusive matrices: upper unitriangular matrices whose rows are strictly
// decreasing and positive after the diagonal. For such a matrix A the
// translates A m + [0,1)^d (m integer) tile R^d, and two tiles touch exactly
// when the difference of their lattice coordinates is a weak-alt-1 sequence.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "secluded/exactnum.hpp"

namespace secluded {

/// Which clause of the reclusive-matrix definition a rejected matrix breaks.
enum class ReclusiveClause {
  lower_triangle_nonzero,
  diagonal_not_one,
  post_diagonal_not_positive,
  post_diagonal_not_decreasing,
};

std::string to_string(ReclusiveClause clause);

/// Rejection from validate_reclusive. Indices are 1-based (row, column).
class ReclusiveViolation : public Error {
 public:
  ReclusiveViolation(ReclusiveClause clause, std::size_t row, std::size_t col);
  ReclusiveClause clause() const { return clause_; }
  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

 private:
  ReclusiveClause clause_;
  std::size_t row_;
  std::size_t col_;
};

class ReclusiveMatrix {
 public:
  const QMatrix& matrix() const { return a_; }
  const QMatrix& inverse() const { return inv_; }
  /// Reclusive distance Delta_A, cached at validation.
  const Rational& delta() const { return delta_; }
  std::size_t dim() const { return a_.dim(); }

 private:
  friend ReclusiveMatrix validate_reclusive(const QMatrix& a);
  ReclusiveMatrix(QMatrix a, QMatrix inv, Rational delta)
      : a_(std::move(a)), inv_(std::move(inv)), delta_(std::move(delta)) {}

  QMatrix a_;
  QMatrix inv_;
  Rational delta_;
};

/// Checks every clause of the definition and throws ReclusiveViolation
/// naming the first failure in row-major order.
ReclusiveMatrix validate_reclusive(const QMatrix& a);

/// a_ij = (d - j + 1) / k above the diagonal (1-based j). Requires k >= d >= 1.
ReclusiveMatrix canonical_reclusive(std::size_t d, std::int64_t k);

/// Minimum of 1, (1 - a_kj), a_kj and (a_kj - a_kj') over the strict upper
/// triangle. Empty ranges contribute nothing.
Rational reclusive_distance(const ReclusiveMatrix& a);

struct WeakAlt1Verdict {
  bool is_weak_alt_1 = true;
  /// 0-based index of the first entry that breaks the property.
  std::optional<std::size_t> witness_index;
};

/// Entries in {-1,0,1} with the nonzero ones alternating in sign. The empty
/// and the all-zero sequence qualify.
WeakAlt1Verdict is_weak_alt_one(std::span<const std::int64_t> c);
/// Throws Error if any entry is not an integer.
WeakAlt1Verdict is_weak_alt_one(const QVector& c);

/// True iff the tiles at lattice coordinates differing by c are adjacent,
/// i.e. ||A c||_inf <= 1. Decided by the weak-alt-1 test; with
/// SECLUDED_CROSSCHECK the exact norm and the 1 + Delta_A gap are also checked.
bool adjacency_by_difference(const ReclusiveMatrix& a, std::span<const std::int64_t> c);

/// The unique integer m with x in A m + [0,1)^d, computed back to front as
/// m_k = floor(x_k - sum_{i>k} a_ki m_i). Any upper unitriangular A works.
IntVector member_coords(const QMatrix& a, const QVector& x);
IntVector member_coords(const ReclusiveMatrix& a, const QVector& x);

/// A * member_coords(A, x): the lower corner of the tile containing x.
QVector representative(const QMatrix& a, const QVector& x);
QVector representative(const ReclusiveMatrix& a, const QVector& x);

/// sum_i i * m_i (1-based i), before reduction.
std::int64_t color_weight(std::span<const std::int64_t> m);

/// Proper (d+1)-coloring of the tiles: color_weight(m) mod (d+1), in [0, d].
int color(const ReclusiveMatrix& a, std::span<const std::int64_t> m);

}  // namespace secluded
