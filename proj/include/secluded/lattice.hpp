#pragma once

// Lattice unit-hypercube partitions P_A = { A m + [0,1)^d : m in Z^d } for an
// arbitrary upper unitriangular A (reclusive or not).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "secluded/exactnum.hpp"
#include "secluded/reclusive.hpp"

namespace secluded {

/// Lattice coordinates m of a tile; its lower corner is A m.
struct MemberId {
  IntVector m;

  friend bool operator==(const MemberId&, const MemberId&) = default;
  friend auto operator<=>(const MemberId&, const MemberId&) = default;
  std::string str() const;
};

struct MemberIdHash {
  std::size_t operator()(const MemberId& id) const noexcept;
};

struct Neighborhood {
  QVector center;
  Rational radius;
  /// Sorted lexicographically, no duplicates.
  std::vector<MemberId> members;
};

class LatticePartition {
 public:
  /// Throws Error unless `a` is upper unitriangular.
  static LatticePartition from_matrix(const QMatrix& a, std::string tag = {});
  static LatticePartition from_reclusive(const ReclusiveMatrix& a, std::string tag = "canonical");

  const QMatrix& matrix() const { return a_; }
  const QMatrix& inverse() const { return inv_; }
  std::size_t dim() const { return a_.dim(); }
  const std::string& tag() const { return tag_; }

  /// Lower corner A m of a tile.
  QVector corner(const MemberId& id) const;
  /// A m + (1/2, ..., 1/2).
  QVector center(const MemberId& id) const;

  MemberId member_of(const QVector& x) const;

  /// d_max(A m1, A m2) <= 1, i.e. the closed tiles intersect.
  bool adjacent(const MemberId& m1, const MemberId& m2) const;

  /// Every c != 0 with ||A c||_inf <= 1, sorted lexicographically.
  std::vector<IntVector> neighbors_of_origin() const;

  /// Tiles meeting the closed ball of d_max radius eps around p. eps > 0.
  Neighborhood neighborhood(const QVector& p, const Rational& eps) const;

  /// Tiles meeting the closed box [lo, hi] (componentwise lo <= hi).
  std::vector<MemberId> members_meeting_box(const QVector& lo, const QVector& hi) const;

  /// Whether tile m meets the closed ball of radius eps around p.
  bool meets_ball(const MemberId& id, const QVector& p, const Rational& eps) const;
  /// Whether p lies in the closed tile [A m, A m + 1]^d.
  bool in_closure(const MemberId& id, const QVector& p) const;

  /// A point in the closure of every listed tile: per coordinate the midpoint
  /// of the extreme tile centers. Throws Error if the tiles are not pairwise
  /// adjacent.
  QVector closure_point(std::span<const MemberId> members) const;

 private:
  LatticePartition(QMatrix a, QMatrix inv, std::string tag)
      : a_(std::move(a)), inv_(std::move(inv)), tag_(std::move(tag)) {}

  QMatrix a_;
  QMatrix inv_;
  std::string tag_;
};

/// Canonical reclusive partition, a_ij = (d - j + 1)/k.
LatticePartition canonical_partition(std::size_t d, std::int64_t k);
inline LatticePartition canonical_partition(std::size_t d) {
  return canonical_partition(d, static_cast<std::int64_t>(d));
}
/// a_ij = (j - 1)/d above the diagonal.
LatticePartition b_prime(std::size_t d);
/// a_ij = (j - i)/(d - i + 1) above the diagonal.
LatticePartition b_double_prime(std::size_t d);
/// Identity matrix: the standard grid.
LatticePartition grid(std::size_t d);

}  // namespace secluded
