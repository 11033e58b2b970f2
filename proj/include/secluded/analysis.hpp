#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "secluded/exactnum.hpp"
#include "secluded/lattice.hpp"

namespace secluded {

struct CliqueReport {
  std::string tag;
  std::size_t d = 0;
  std::size_t clique_size = 0;
  /// Pairwise adjacent tiles, origin first.
  std::vector<MemberId> witness;
  double runtime_ms = 0.0;

  std::string to_text() const;
  std::string to_json() const;
};

/// Exact maximum clique of the partition's adjacency graph.
///
/// Translation invariance lets every clique be moved to contain the origin,
/// so the answer is 1 + the maximum clique of the graph induced on
/// neighbors_of_origin(P) (edge u-v iff u - v is itself a neighbor).
/// Branch and bound with greedy-coloring bounds; vertex order is fixed, so
/// the witness is deterministic.
CliqueReport max_clique(const LatticePartition& p);

/// All maximal cliques through the origin (origin included), at most `limit`.
std::vector<std::vector<MemberId>> maximal_cliques_through_origin(const LatticePartition& p,
                                                                  std::size_t limit);

struct Counterexample {
  QVector point;
  Rational radius;
  std::vector<MemberId> members;
};

struct VerifyStats {
  std::size_t adversarial_points = 0;
  std::size_t random_points = 0;
};

/// Searches for a point whose closed eps-ball meets more than k tiles.
///
/// This is a falsifier: adversarial points (closure points of maximal
/// cliques, their +-eps perturbations, tile corners) are tried first, then
/// `trials` seeded random rationals in the fundamental domain [0,1)^d. No
/// counterexample is evidence, not proof. Deterministic for a fixed seed.
std::optional<Counterexample> verify_secluded(const LatticePartition& p, std::size_t k, const Rational& eps,
                                              std::size_t trials, std::uint64_t seed,
                                              VerifyStats* stats = nullptr);

/// max_clique followed by closure_point on its witness.
std::pair<QVector, std::vector<MemberId>> clique_point(const LatticePartition& p);

/// Known Sperner numbers of the d-cube.
struct SpernerTable {
  static const std::map<std::size_t, long>& known();
};

/// Exact value for d <= 4, else ceil((d+1)^((d-1)/2)).
Integer sperner_lower(std::size_t d);

struct ToleranceReport {
  std::size_t d = 0;
  Rational diameter;
  /// Set when the primary bound is rational (d = 1, 2, 4).
  std::optional<Rational> exact_bound;
  /// d = 1: D/2; d = 2: D/4; d >= 3: D / (2 (sperner^(1/d) - 1)).
  long double primary_bound = 0;
  /// D / (2 sqrt(d)).
  long double sqrt_bound = 0;
  /// False for d >= 5, where only a lower bound on the Sperner number is
  /// known and both values are reported side by side.
  bool primary_marked = true;
  std::string source;

  std::string to_text() const;
};

/// Upper bound on the tolerance of any (d+1)-secluded partition whose members
/// have diameter at most D. Requires d >= 1 and D > 0.
ToleranceReport tolerance_upper_bound(std::size_t d, const Rational& diameter);

}  // namespace secluded
