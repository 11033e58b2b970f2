#include "secluded/analysis.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace secluded {

namespace {

// Dense bitset rows over a fixed vertex count.
class BitGraph {
 public:
  explicit BitGraph(std::size_t n) : n_(n), words_((n + 63) / 64), adj_(n * words_, 0) {}

  std::size_t size() const { return n_; }
  std::size_t words() const { return words_; }
  void connect(std::size_t u, std::size_t v) {
    adj_[u * words_ + v / 64] |= 1ULL << (v % 64);
    adj_[v * words_ + u / 64] |= 1ULL << (u % 64);
  }
  const std::uint64_t* row(std::size_t v) const { return &adj_[v * words_]; }
  std::size_t degree(std::size_t v) const {
    std::size_t deg = 0;
    for (std::size_t w = 0; w < words_; ++w) deg += static_cast<std::size_t>(std::popcount(row(v)[w]));
    return deg;
  }

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> adj_;
};

using Bits = std::vector<std::uint64_t>;

bool any(const Bits& b) {
  return std::any_of(b.begin(), b.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t count(const Bits& b) {
  std::size_t c = 0;
  for (auto w : b) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

// Neighbor graph of the origin, relabelled so that vertex 0 has the highest degree.
struct NeighborGraph {
  std::vector<IntVector> vertices;
  BitGraph graph{0};
};

NeighborGraph build_neighbor_graph(const LatticePartition& p) {
  std::vector<IntVector> nbrs = p.neighbors_of_origin();
  std::unordered_map<MemberId, std::size_t, MemberIdHash> index;
  index.reserve(nbrs.size() * 2);
  for (std::size_t i = 0; i < nbrs.size(); ++i) index.emplace(MemberId{nbrs[i]}, i);

  const std::size_t n = nbrs.size();
  const std::size_t d = p.dim();
  BitGraph raw(n);
  MemberId diff{IntVector(d)};
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      for (std::size_t k = 0; k < d; ++k) diff.m[k] = nbrs[u][k] - nbrs[v][k];
      if (index.count(diff)) raw.connect(u, v);
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> deg(n);
  for (std::size_t v = 0; v < n; ++v) deg[v] = raw.degree(v);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return deg[a] > deg[b]; });

  NeighborGraph out;
  out.graph = BitGraph(n);
  out.vertices.reserve(n);
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) {
    pos[order[i]] = i;
    out.vertices.push_back(nbrs[order[i]]);
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (raw.row(u)[v / 64] >> (v % 64) & 1ULL) out.graph.connect(pos[u], pos[v]);
    }
  }
  return out;
}

class MaxCliqueSearch {
 public:
  explicit MaxCliqueSearch(const BitGraph& g) : g_(g) {}

  std::vector<std::size_t> run() {
    Bits all(g_.words(), 0);
    for (std::size_t v = 0; v < g_.size(); ++v) all[v / 64] |= 1ULL << (v % 64);
    std::vector<std::size_t> current;
    if (g_.size() > 0) expand(all, current);
    return best_;
  }

 private:
  void expand(Bits candidates, std::vector<std::size_t>& current) {
    // Greedy sequential coloring; color classes give an upper bound on the
    // clique size reachable from each suffix of the order.
    std::vector<std::size_t> order;
    std::vector<std::size_t> bound;
    order.reserve(count(candidates));
    bound.reserve(order.capacity());
    Bits uncolored = candidates;
    std::size_t color = 0;
    while (any(uncolored)) {
      ++color;
      Bits q = uncolored;
      for (std::size_t w = 0; w < q.size(); ++w) {
        while (q[w]) {
          const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(q[w]));
          const std::uint64_t* nb = g_.row(v);
          for (std::size_t x = w; x < q.size(); ++x) q[x] &= ~nb[x];
          q[w] &= ~(1ULL << (v % 64));
          uncolored[w] &= ~(1ULL << (v % 64));
          order.push_back(v);
          bound.push_back(color);
        }
      }
    }

    Bits next(candidates.size());
    for (std::size_t i = order.size(); i-- > 0;) {
      if (current.size() + bound[i] <= best_.size()) return;
      const std::size_t v = order[i];
      current.push_back(v);
      const std::uint64_t* nb = g_.row(v);
      for (std::size_t w = 0; w < candidates.size(); ++w) next[w] = candidates[w] & nb[w];
      if (!any(next)) {
        if (current.size() > best_.size()) best_ = current;
      } else {
        expand(next, current);
      }
      current.pop_back();
      candidates[v / 64] &= ~(1ULL << (v % 64));
    }
  }

  const BitGraph& g_;
  std::vector<std::size_t> best_;
};

void bron_kerbosch(const BitGraph& g, std::vector<std::size_t>& r, Bits p, Bits x,
                   std::vector<std::vector<std::size_t>>& out, std::size_t limit) {
  if (out.size() >= limit) return;
  if (!any(p) && !any(x)) {
    out.push_back(r);
    return;
  }
  // Pivot: the vertex of P u X with most neighbors in P.
  std::size_t pivot = 0, pivot_hits = 0;
  bool have_pivot = false;
  for (std::size_t w = 0; w < p.size(); ++w) {
    std::uint64_t bits = p[w] | x[w];
    while (bits) {
      const std::size_t u = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
      bits &= bits - 1;
      std::size_t hits = 0;
      for (std::size_t k = 0; k < p.size(); ++k) hits += static_cast<std::size_t>(std::popcount(p[k] & g.row(u)[k]));
      if (!have_pivot || hits > pivot_hits) {
        pivot = u;
        pivot_hits = hits;
        have_pivot = true;
      }
    }
  }
  Bits todo(p.size());
  for (std::size_t w = 0; w < p.size(); ++w) todo[w] = p[w] & ~g.row(pivot)[w];
  for (std::size_t w = 0; w < todo.size(); ++w) {
    while (todo[w]) {
      const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(todo[w]));
      todo[w] &= todo[w] - 1;
      Bits np(p.size()), nx(p.size());
      for (std::size_t k = 0; k < p.size(); ++k) {
        np[k] = p[k] & g.row(v)[k];
        nx[k] = x[k] & g.row(v)[k];
      }
      r.push_back(v);
      bron_kerbosch(g, r, np, nx, out, limit);
      r.pop_back();
      if (out.size() >= limit) return;
      p[v / 64] &= ~(1ULL << (v % 64));
      x[v / 64] |= 1ULL << (v % 64);
    }
  }
}

void verify_clique_or_throw(const LatticePartition& p, const std::vector<MemberId>& clique) {
  for (std::size_t i = 0; i < clique.size(); ++i) {
    for (std::size_t j = i + 1; j < clique.size(); ++j) {
      if (!p.adjacent(clique[i], clique[j])) {
        throw InternalError("clique witness members " + clique[i].str() + " and " + clique[j].str() +
                            " are not adjacent");
      }
    }
  }
}

}  // namespace

std::string CliqueReport::to_text() const {
  std::ostringstream os;
  os << clique_size << "\n";
  os << "partition " << (tag.empty() ? "custom" : tag) << " d=" << d << "\n";
  for (const auto& id : witness) os << "  " << id.str() << "\n";
  os << "runtime_ms " << static_cast<long long>(std::llround(runtime_ms)) << "\n";
  return os.str();
}

std::string CliqueReport::to_json() const {
  nlohmann::json j;
  j["tag"] = tag;
  j["d"] = d;
  j["clique_size"] = clique_size;
  j["witness"] = nlohmann::json::array();
  for (const auto& id : witness) j["witness"].push_back(id.m);
  j["runtime_ms"] = runtime_ms;
  return j.dump();
}

CliqueReport max_clique(const LatticePartition& p) {
  const auto start = std::chrono::steady_clock::now();
  const NeighborGraph ng = build_neighbor_graph(p);
  MaxCliqueSearch search(ng.graph);
  const std::vector<std::size_t> best = search.run();

  CliqueReport report;
  report.tag = p.tag();
  report.d = p.dim();
  report.witness.push_back(MemberId{IntVector(p.dim(), 0)});
  std::vector<MemberId> rest;
  for (auto v : best) rest.push_back(MemberId{ng.vertices[v]});
  std::sort(rest.begin(), rest.end());
  report.witness.insert(report.witness.end(), rest.begin(), rest.end());
  report.clique_size = report.witness.size();
  verify_clique_or_throw(p, report.witness);
  report.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<std::vector<MemberId>> maximal_cliques_through_origin(const LatticePartition& p,
                                                                  std::size_t limit) {
  const NeighborGraph ng = build_neighbor_graph(p);
  const std::size_t n = ng.graph.size();
  Bits all((n + 63) / 64, 0), none((n + 63) / 64, 0);
  for (std::size_t v = 0; v < n; ++v) all[v / 64] |= 1ULL << (v % 64);
  std::vector<std::vector<std::size_t>> raw;
  std::vector<std::size_t> r;
  if (n == 0) {
    raw.push_back({});
  } else {
    bron_kerbosch(ng.graph, r, all, none, raw, limit);
  }
  std::vector<std::vector<MemberId>> out;
  out.reserve(raw.size());
  for (const auto& c : raw) {
    std::vector<MemberId> clique{MemberId{IntVector(p.dim(), 0)}};
    for (auto v : c) clique.push_back(MemberId{ng.vertices[v]});
    std::sort(clique.begin() + 1, clique.end());
    out.push_back(std::move(clique));
  }
  return out;
}

std::optional<Counterexample> verify_secluded(const LatticePartition& p, std::size_t k, const Rational& eps,
                                              std::size_t trials, std::uint64_t seed, VerifyStats* stats) {
  if (eps.sign() <= 0) throw Error("verify: eps must be positive, got " + eps.str());
  if (trials == 0) throw Error("verify: trials must be positive");
  const std::size_t d = p.dim();
  VerifyStats local;
  VerifyStats& st = stats ? *stats : local;
  st = {};

  auto check = [&](const QVector& pt) -> std::optional<Counterexample> {
    Neighborhood nb = p.neighborhood(pt, eps);
    if (nb.members.size() <= k) return std::nullopt;
    for (const auto& id : nb.members) {
      if (!p.meets_ball(id, pt, eps)) throw InternalError("neighborhood member " + id.str() + " misses the ball");
    }
    return Counterexample{pt, eps, std::move(nb.members)};
  };

  auto to_fundamental = [&](const QVector& pt) { return pt - p.corner(p.member_of(pt)); };

  // Adversarial points: closure points of maximal cliques and their eps-corner
  // perturbations, then corners of the origin tile.
  std::vector<QVector> adversarial;
  const auto cliques = maximal_cliques_through_origin(p, 1024);
  std::vector<std::vector<MemberId>> ordered(cliques.begin(), cliques.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  for (const auto& clique : ordered) {
    const QVector cp = to_fundamental(p.closure_point(clique));
    adversarial.push_back(cp);
  }
  if (d <= 10) {
    for (const auto& clique : ordered) {
      const QVector cp = to_fundamental(p.closure_point(clique));
      for (std::uint64_t mask = 0; mask < (1ULL << d); ++mask) {
        QVector q = cp;
        for (std::size_t i = 0; i < d; ++i) q[i] += (mask >> i & 1ULL) ? eps : -eps;
        adversarial.push_back(q);
      }
    }
    for (std::uint64_t mask = 0; mask < (1ULL << d); ++mask) {
      QVector q(d);
      for (std::size_t i = 0; i < d; ++i) q[i] = (mask >> i & 1ULL) ? 1 : 0;
      adversarial.push_back(q);
    }
  }
  for (const auto& pt : adversarial) {
    ++st.adversarial_points;
    if (auto cx = check(pt)) return cx;
  }

  // Random points in [0,1)^d. Even trials use a coarse denominator that is a
  // multiple of every matrix and radius denominator, so tile boundaries and
  // ball edges are hit exactly; odd trials use a fine dyadic grid.
  Integer coarse = p.matrix().common_denominator() * eps.denominator() * 4;
  if (coarse > Integer(1UL << 40)) coarse = Integer(1UL << 40);
  const auto coarse_den = static_cast<std::uint64_t>(coarse.get_ui());
  constexpr std::uint64_t fine_den = 1ULL << 40;
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t den = (t % 2 == 0) ? coarse_den : fine_den;
    std::uniform_int_distribution<std::uint64_t> pick(0, den - 1);
    QVector q(d);
    for (std::size_t i = 0; i < d; ++i) {
      q[i] = Rational(Integer(static_cast<unsigned long>(pick(rng))), Integer(static_cast<unsigned long>(den)));
    }
    ++st.random_points;
    if (auto cx = check(q)) return cx;
  }
  return std::nullopt;
}

std::pair<QVector, std::vector<MemberId>> clique_point(const LatticePartition& p) {
  CliqueReport report = max_clique(p);
  QVector pt = p.closure_point(report.witness);
  return {std::move(pt), std::move(report.witness)};
}

const std::map<std::size_t, long>& SpernerTable::known() {
  static const std::map<std::size_t, long> table{{1, 1}, {2, 2}, {3, 5}, {4, 16}};
  return table;
}

Integer sperner_lower(std::size_t d) {
  if (d < 1) throw Error("sperner number needs d >= 1");
  const auto& table = SpernerTable::known();
  if (auto it = table.find(d); it != table.end()) return Integer(it->second);
  // ceil((d+1)^((d-1)/2)); for even d this is ceil(sqrt((d+1)^(d-1))).
  Integer base(static_cast<unsigned long>(d + 1));
  Integer power;
  mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(d - 1));
  Integer root;
  mpz_sqrt(root.get_mpz_t(), power.get_mpz_t());
  if (root * root != power) root += 1;
  return root;
}

namespace {

long double log_integer(const Integer& z) {
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log(static_cast<long double>(mant)) + static_cast<long double>(exp2) * std::log(2.0L);
}

}  // namespace

ToleranceReport tolerance_upper_bound(std::size_t d, const Rational& diameter) {
  if (d < 1) throw Error("bounds: d must be at least 1");
  if (diameter.sign() <= 0) throw Error("bounds: diameter D must be positive, got " + diameter.str());
  ToleranceReport r;
  r.d = d;
  r.diameter = diameter;
  const long double dd = diameter.to_long_double();
  r.sqrt_bound = dd / (2.0L * std::sqrt(static_cast<long double>(d)));
  if (d == 1) {
    r.exact_bound = diameter * rat(1, 2);
    r.primary_bound = r.exact_bound->to_long_double();
    r.source = "diameter bound in dimension 1 (D/2)";
    return r;
  }
  if (d == 2) {
    r.exact_bound = diameter * rat(1, 4);
    r.primary_bound = r.exact_bound->to_long_double();
    r.source = "optimal tolerance in dimension 2 (D/4)";
    return r;
  }
  const Integer s = sperner_lower(d);
  Integer root;
  const bool exact_root = mpz_root(root.get_mpz_t(), s.get_mpz_t(), static_cast<unsigned long>(d)) != 0;
  if (exact_root && root > 1) {
    r.exact_bound = diameter / (2 * (Rational(root) - 1));
    r.primary_bound = r.exact_bound->to_long_double();
  } else {
    const long double nth = std::exp(log_integer(s) / static_cast<long double>(d));
    r.primary_bound = dd / (2.0L * (nth - 1.0L));
  }
  if (d <= 4) {
    r.source = "Sperner number sperner(" + std::to_string(d) + ") = " + s.get_str() + " (exact)";
  } else {
    r.primary_marked = false;
    r.exact_bound.reset();
    if (exact_root && root > 1) r.exact_bound = diameter / (2 * (Rational(root) - 1));
    r.source = "Sperner lower bound ceil((d+1)^((d-1)/2)) = " + s.get_str() + "; no ordering asserted";
  }
  return r;
}

std::string ToleranceReport::to_text() const {
  std::ostringstream os;
  os.precision(12);
  os << "d=" << d << " D=" << diameter.str() << "\n";
  if (exact_bound) os << "bound " << exact_bound->str() << " (exact)\n";
  os << (primary_marked ? "primary " : "sperner ") << std::fixed << static_cast<double>(primary_bound)
     << " [12dp] " << source << "\n";
  os << "sqrt " << std::fixed << static_cast<double>(sqrt_bound) << " [12dp] D/(2 sqrt(d))\n";
  return os.str();
}

}  // namespace secluded
