#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "secluded/analysis.hpp"
#include "secluded/error.hpp"

using namespace secluded;

namespace {

void check_witness(const LatticePartition& p, const CliqueReport& r) {
  REQUIRE(r.witness.size() == r.clique_size);
  CHECK(r.witness.front() == MemberId{IntVector(p.dim(), 0)});
  for (std::size_t i = 0; i < r.witness.size(); ++i) {
    for (std::size_t j = i + 1; j < r.witness.size(); ++j) CHECK(p.adjacent(r.witness[i], r.witness[j]));
  }
}

std::size_t oracle_clique(const LatticePartition& p, std::int64_t box) {
  auto [nbrs, edge] = oracle::neighbors_in_box(p.matrix(), box);
  REQUIRE_FALSE(edge);
  return 1 + oracle::max_clique_size(nbrs);
}

}  // namespace

TEST_CASE("max clique of canonical partitions is d+1") {
  for (std::size_t d = 1; d <= 6; ++d) {
    const LatticePartition p = canonical_partition(d, static_cast<std::int64_t>(d));
    const CliqueReport r = max_clique(p);
    CHECK(r.clique_size == d + 1);
    check_witness(p, r);
    // The (d+1)-coloring of tiles is proper on the neighbor graph, so no
    // clique can be larger than d+1.
    const ReclusiveMatrix a = canonical_reclusive(d, static_cast<std::int64_t>(d));
    for (const IntVector& c : p.neighbors_of_origin()) CHECK(color(a, c) != 0);
  }
  CHECK(max_clique(grid(3)).clique_size == 8);
}

TEST_CASE("max clique agrees with the exhaustive oracle on the B families") {
  for (std::size_t d = 1; d <= 5; ++d) {
    for (const LatticePartition& p : {b_prime(d), b_double_prime(d)}) {
      CAPTURE(p.tag());
      const CliqueReport r = max_clique(p);
      CHECK(r.clique_size == oracle_clique(p, d <= 4 ? 3 : 2));
      check_witness(p, r);
    }
  }
  CHECK(max_clique(b_prime(5)).clique_size == 7);
  CHECK(max_clique(b_double_prime(5)).clique_size == 8);
}

TEST_CASE("clique report serializations") {
  const CliqueReport r = max_clique(canonical_partition(2, 2));
  CHECK(r.to_text().rfind("3\n", 0) == 0);
  const std::string j = r.to_json();
  CHECK(j.find("\"clique_size\":3") != std::string::npos);
  CHECK(j.find("\"witness\"") != std::string::npos);
}

TEST_CASE("maximal cliques through the origin") {
  const LatticePartition p = canonical_partition(2, 2);
  const auto cliques = maximal_cliques_through_origin(p, 100);
  CHECK(cliques.size() == 6);
  for (const auto& c : cliques) {
    CHECK(c.size() == 3);
    CHECK(std::find(c.begin(), c.end(), MemberId{IntVector{0, 0}}) != c.end());
  }
  CHECK(maximal_cliques_through_origin(p, 2).size() == 2);
}

TEST_CASE("verify_secluded examples") {
  CHECK_FALSE(verify_secluded(canonical_partition(3, 3), 4, rat(1, 6), 2000, 1).has_value());

  const auto bad = verify_secluded(canonical_partition(2, 2), 2, rat(1, 4), 2000, 1);
  REQUIRE(bad.has_value());
  CHECK(bad->members.size() > 2);
  CHECK(bad->radius == rat(1, 4));
  for (const auto& id : bad->members) CHECK(canonical_partition(2, 2).meets_ball(id, bad->point, bad->radius));

  const auto g = verify_secluded(grid(2), 3, rat(1, 10), 2000, 1);
  REQUIRE(g.has_value());
  CHECK(g->members.size() == 4);
}

TEST_CASE("verify_secluded is deterministic for a seed") {
  VerifyStats s1, s2;
  const auto a = verify_secluded(canonical_partition(3, 3), 3, rat(1, 7), 500, 9, &s1);
  const auto b = verify_secluded(canonical_partition(3, 3), 3, rat(1, 7), 500, 9, &s2);
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(a->point == b->point);
  CHECK(a->members == b->members);
  CHECK(s1.adversarial_points == s2.adversarial_points);
  CHECK_THROWS_AS(verify_secluded(canonical_partition(2, 2), 3, 0, 10, 1), Error);
}

TEST_CASE("clique_point lies in the closure of every witness tile") {
  for (const LatticePartition& p : {canonical_partition(2, 2), grid(1), b_prime(5)}) {
    CAPTURE(p.tag());
    const auto [x, tiles] = clique_point(p);
    CHECK(tiles.size() == max_clique(p).clique_size);
    for (const auto& id : tiles) CHECK(p.in_closure(id, x));
  }
}

TEST_CASE("sperner numbers") {
  CHECK(SpernerTable::known().at(3) == 5);
  CHECK(SpernerTable::known().at(4) == 16);
  CHECK(sperner_lower(3) == 5);
  CHECK(sperner_lower(4) == 16);
  CHECK(sperner_lower(5) == 36);
  CHECK(sperner_lower(6) == 130);  // ceil(7^(5/2))
}

TEST_CASE("tolerance upper bounds") {
  const ToleranceReport t3 = tolerance_upper_bound(3, 1);
  CHECK(std::fabs(static_cast<double>(t3.primary_bound) - 1.0 / (2.0 * (std::cbrt(5.0) - 1.0))) < 1e-12);
  CHECK(std::fabs(static_cast<double>(t3.primary_bound) - 0.704249210611) < 1e-9);
  CHECK(std::fabs(static_cast<double>(t3.sqrt_bound) - 1.0 / (2.0 * std::sqrt(3.0))) < 1e-12);

  const ToleranceReport t4 = tolerance_upper_bound(4, 1);
  REQUIRE(t4.exact_bound.has_value());
  CHECK(*t4.exact_bound == rat(1, 2));
  CHECK(t4.primary_marked);

  const ToleranceReport t1 = tolerance_upper_bound(1, 2);
  REQUIRE(t1.exact_bound.has_value());
  CHECK(*t1.exact_bound == 1);
  CHECK(*tolerance_upper_bound(2, 1).exact_bound == rat(1, 4));

  const ToleranceReport t5 = tolerance_upper_bound(5, 1);
  CHECK_FALSE(t5.primary_marked);
  CHECK(t5.to_text().find("sperner ") != std::string::npos);
  CHECK_THROWS_AS(tolerance_upper_bound(0, 1), Error);
  CHECK_THROWS_AS(tolerance_upper_bound(3, 0), Error);
}
