#pragma once

// Deterministic rounding schemes R^d -> R^d and the partitions they induce.
//
// A scheme f induces the partition of R^d into fibers of f; conversely a
// partition with a chosen point per member gives the scheme x -> rep(member(x)).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "secluded/exactnum.hpp"
#include "secluded/lattice.hpp"
#include "secluded/reclusive.hpp"

namespace secluded {

using RoundingFn = std::function<QVector(const QVector&)>;

/// Coordinatewise alpha * floor((x_i - beta_i) / alpha) + gamma_i.
class FloorScheme {
 public:
  /// alpha > 0; beta and gamma must share a dimension.
  FloorScheme(Rational alpha, QVector beta, QVector gamma);
  /// beta = gamma = 0.
  FloorScheme(Rational alpha, std::size_t d);

  const Rational& alpha() const { return alpha_; }
  const QVector& beta() const { return beta_; }
  const QVector& gamma() const { return gamma_; }
  std::size_t dim() const { return beta_.dim(); }

 private:
  Rational alpha_;
  QVector beta_;
  QVector gamma_;
};

QVector floor_round(const FloorScheme& s, const QVector& x);

/// Width alpha = 2^-t and common shift beta = j / 2^D, j in [0, 2^D), on
/// vectors of length `len` (d^2 for d x d matrices).
FloorScheme saks_zhou_scheme(std::size_t len, unsigned t, unsigned big_d, std::uint64_t j);

/// Width alpha = eps and common shift beta = -(j - 1/2) * alpha / (10 d^2),
/// j in [1, 10 d^2].
FloorScheme goldreich_scheme(std::size_t d, const Rational& eps, std::uint64_t j);

/// Shift-then-round over a grid of side 2 eps (d+1) anchored at 0, with the
/// d+1 diagonal shifts (2 eps k) * 1, k = 1..d+1.
class HKScheme {
 public:
  HKScheme(std::size_t d, Rational eps);

  std::size_t dim() const { return d_; }
  const Rational& eps() const { return eps_; }
  /// 2 eps (d+1); also the diameter of a grid cell.
  const Rational& interval_len() const { return len_; }
  /// Entry k-1 is the shift (2 eps k) * 1.
  const std::vector<QVector>& shifts() const { return shifts_; }

 private:
  std::size_t d_;
  Rational eps_;
  Rational len_;
  std::vector<QVector> shifts_;
};

struct ShiftChoice {
  /// Shift multiplier k in [1, d+1].
  std::size_t k;
  QVector shift;
};

/// The smallest k whose shifted closed eps-box lies inside one grid cell.
ShiftChoice hk_shift_select(const HKScheme& s, const QVector& x);
/// Center of the grid cell containing x + s(x).
QVector hk_round(const HKScheme& s, const QVector& x);

/// Ingredients of the generic shift-rounding construction.
struct ShiftRounding {
  Rational eps;
  std::vector<QVector> shifts;
  /// Index into `shifts` for a point.
  std::function<std::size_t(const QVector&)> select;
  /// Representative of the base-partition member containing a point.
  RoundingFn member_rep;
  /// First coordinate along which the closed eps-box around a point leaves
  /// its base member, or nullopt when the box fits.
  std::function<std::optional<std::size_t>(const QVector&, const Rational&)> box_escape;
};

/// rep(member(x + s(x))). Throws Error naming the coordinate if the
/// selector breaks the ball-containment contract.
QVector shift_round(const ShiftRounding& spec, const QVector& x);

/// The HK scheme expressed through the generic construction.
ShiftRounding hk_shift_rounding(const HKScheme& s);

/// Algorithm-1 style rounding: scale by Delta_A / eps, snap to the tile
/// corner of the reclusive partition, scale back.
class ReclusiveRounder {
 public:
  /// eps > 0.
  ReclusiveRounder(ReclusiveMatrix a, Rational eps);

  const ReclusiveMatrix& matrix() const { return a_; }
  const Rational& eps() const { return eps_; }
  /// Delta_A / eps.
  const Rational& scale() const { return scale_; }
  /// eps (1/Delta_A + 1): worst-case distance from the exact target.
  Rational error_bound() const;

 private:
  ReclusiveMatrix a_;
  Rational eps_;
  Rational scale_;
};

QVector reclusive_round(const ReclusiveRounder& r, const QVector& alpha);

/// Partition induced by a scheme, queried through its fibers.
class InducedPartition {
 public:
  explicit InducedPartition(RoundingFn f) : f_(std::move(f)) {}
  /// Label of the member containing x (the scheme's output).
  QVector label(const QVector& x) const { return f_(x); }
  bool same_member(const QVector& x, const QVector& y) const { return f_(x) == f_(y); }

 private:
  RoundingFn f_;
};

InducedPartition scheme_to_partition(RoundingFn f);

/// x -> A m + offset where m = member_of(x); offset 0 gives the lower corner.
RoundingFn partition_to_scheme(LatticePartition p, std::optional<QVector> offset = std::nullopt);

RoundingFn as_rounding_fn(FloorScheme s);
RoundingFn as_rounding_fn(HKScheme s);
RoundingFn as_rounding_fn(ReclusiveRounder r);

}  // namespace secluded
