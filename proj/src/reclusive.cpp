#include "secluded/reclusive.hpp"

namespace secluded {

std::string to_string(ReclusiveClause clause) {
  switch (clause) {
    case ReclusiveClause::lower_triangle_nonzero: return "nonzero entry below the diagonal";
    case ReclusiveClause::diagonal_not_one: return "diagonal entry is not 1";
    case ReclusiveClause::post_diagonal_not_positive: return "entry after the diagonal is not positive";
    case ReclusiveClause::post_diagonal_not_decreasing:
      return "row is not strictly decreasing after the diagonal";
  }
  return "unknown clause";
}

ReclusiveViolation::ReclusiveViolation(ReclusiveClause clause, std::size_t row, std::size_t col)
    : Error("not reclusive: " + to_string(clause) + " at (" + std::to_string(row) + ", " +
            std::to_string(col) + ")"),
      clause_(clause),
      row_(row),
      col_(col) {}

namespace {

Rational compute_distance(const QMatrix& a) {
  const std::size_t d = a.dim();
  Rational best(1);  // delta_1
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t j = k + 1; j < d; ++j) {
      best = min(best, 1 - a(k, j));
      best = min(best, a(k, j));
      for (std::size_t jj = j + 1; jj < d; ++jj) best = min(best, a(k, j) - a(k, jj));
    }
  }
  return best;
}

}  // namespace

ReclusiveMatrix validate_reclusive(const QMatrix& a) {
  const std::size_t d = a.dim();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (j < i) {
        if (a(i, j) != 0) throw ReclusiveViolation(ReclusiveClause::lower_triangle_nonzero, i + 1, j + 1);
      } else if (j == i) {
        if (a(i, j) != 1) throw ReclusiveViolation(ReclusiveClause::diagonal_not_one, i + 1, j + 1);
      } else {
        if (a(i, j).sign() <= 0) {
          throw ReclusiveViolation(ReclusiveClause::post_diagonal_not_positive, i + 1, j + 1);
        }
        // The first post-diagonal entry must also sit strictly below the 1 on the diagonal.
        if (a(i, j) >= a(i, j - 1)) {
          throw ReclusiveViolation(ReclusiveClause::post_diagonal_not_decreasing, i + 1, j + 1);
        }
      }
    }
  }
  QMatrix inv = inverse_upper_unitriangular(a);
  Rational delta = compute_distance(a);
  if (delta.sign() <= 0) throw InternalError("reclusive distance is not positive");
  return ReclusiveMatrix(a, std::move(inv), std::move(delta));
}

ReclusiveMatrix canonical_reclusive(std::size_t d, std::int64_t k) {
  if (d < 1) throw Error("canonical reclusive matrix needs d >= 1");
  if (k < static_cast<std::int64_t>(d)) {
    throw Error("canonical reclusive matrix needs k >= d (got d=" + std::to_string(d) +
                ", k=" + std::to_string(k) + ")");
  }
  QMatrix a = QMatrix::identity(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      // 1-based column j+1: (d - (j+1) + 1) / k
      a(i, j) = rat(static_cast<long>(d - j), k);
    }
  }
  return validate_reclusive(a);
}

Rational reclusive_distance(const ReclusiveMatrix& a) { return compute_distance(a.matrix()); }

WeakAlt1Verdict is_weak_alt_one(std::span<const std::int64_t> c) {
  int last_sign = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::int64_t v = c[i];
    if (v > 1 || v < -1) return {false, i};
    if (v == 0) continue;
    const int s = v > 0 ? 1 : -1;
    if (s == last_sign) return {false, i};
    last_sign = s;
  }
  return {true, std::nullopt};
}

WeakAlt1Verdict is_weak_alt_one(const QVector& c) {
  const IntVector ints = c.to_ints();
  return is_weak_alt_one(std::span<const std::int64_t>(ints));
}

bool adjacency_by_difference(const ReclusiveMatrix& a, std::span<const std::int64_t> c) {
  if (c.size() != a.dim()) {
    throw Error("adjacency_by_difference: dimension mismatch (" + std::to_string(c.size()) +
                " vs " + std::to_string(a.dim()) + ")");
  }
  const bool adjacent = is_weak_alt_one(c).is_weak_alt_1;
#ifdef SECLUDED_CROSSCHECK
  const Rational norm = linf_norm(mat_vec_mul(a.matrix(), c));
  if ((norm <= 1) != adjacent) {
    throw InternalError("weak-alt-1 test disagrees with ||Ac|| = " + norm.str());
  }
  if (!adjacent && norm < 1 + a.delta()) {
    throw InternalError("||Ac|| = " + norm.str() + " lies inside the (1, 1 + Delta_A) gap");
  }
#endif
  return adjacent;
}

IntVector member_coords(const QMatrix& a, const QVector& x) {
  const std::size_t d = a.dim();
  if (x.dim() != d) {
    throw Error("member_coords: dimension mismatch (" + std::to_string(x.dim()) + " vs " +
                std::to_string(d) + ")");
  }
  if (!a.is_upper_unitriangular()) throw Error("member_coords: matrix is not upper unitriangular");
  IntVector m(d);
  for (std::size_t k = d; k-- > 0;) {
    Rational t = x[k];
    for (std::size_t i = k + 1; i < d; ++i) {
      if (m[i] != 0) t -= a(k, i) * Rational(static_cast<long>(m[i]));
    }
    m[k] = t.floor_i64();
  }
  return m;
}

IntVector member_coords(const ReclusiveMatrix& a, const QVector& x) { return member_coords(a.matrix(), x); }

QVector representative(const QMatrix& a, const QVector& x) {
  const IntVector m = member_coords(a, x);
  return mat_vec_mul(a, std::span<const std::int64_t>(m));
}

QVector representative(const ReclusiveMatrix& a, const QVector& x) { return representative(a.matrix(), x); }

std::int64_t color_weight(std::span<const std::int64_t> m) {
  std::int64_t w = 0;
  for (std::size_t i = 0; i < m.size(); ++i) w += static_cast<std::int64_t>(i + 1) * m[i];
  return w;
}

int color(const ReclusiveMatrix& a, std::span<const std::int64_t> m) {
  if (m.size() != a.dim()) throw Error("color: dimension mismatch");
  const auto mod = static_cast<std::int64_t>(a.dim() + 1);
  const std::int64_t r = color_weight(m) % mod;
  return static_cast<int>(r < 0 ? r + mod : r);
}

}  // namespace secluded
