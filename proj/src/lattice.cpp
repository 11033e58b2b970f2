#include "secluded/lattice.hpp"

#include <algorithm>

namespace secluded {

std::string MemberId::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(m[i]);
  }
  return out + ")";
}

std::size_t MemberIdHash::operator()(const MemberId& id) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto v : id.m) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

LatticePartition LatticePartition::from_matrix(const QMatrix& a, std::string tag) {
  if (!a.is_upper_unitriangular()) {
    throw Error("lattice partition needs an upper unitriangular matrix");
  }
  QMatrix inv = inverse_upper_unitriangular(a);
  if (mat_mul(a, inv) != QMatrix::identity(a.dim())) throw InternalError("A * A^-1 != I");
  return LatticePartition(a, std::move(inv), std::move(tag));
}

LatticePartition LatticePartition::from_reclusive(const ReclusiveMatrix& a, std::string tag) {
  return LatticePartition(a.matrix(), a.inverse(), std::move(tag));
}

QVector LatticePartition::corner(const MemberId& id) const {
  return mat_vec_mul(a_, std::span<const std::int64_t>(id.m));
}

QVector LatticePartition::center(const MemberId& id) const {
  return corner(id) + QVector::filled(dim(), rat(1, 2));
}

MemberId LatticePartition::member_of(const QVector& x) const { return {member_coords(a_, x)}; }

bool LatticePartition::adjacent(const MemberId& m1, const MemberId& m2) const {
  return linf_dist(corner(m1), corner(m2)) <= 1;
}

namespace {

// sum_{j>k} a_kj m_j
Rational tail_sum(const QMatrix& a, std::size_t k, const IntVector& m) {
  Rational s;
  for (std::size_t j = k + 1; j < a.dim(); ++j) {
    if (m[j] != 0 && a(k, j).sign() != 0) s += a(k, j) * Rational(static_cast<long>(m[j]));
  }
  return s;
}

}  // namespace

std::vector<IntVector> LatticePartition::neighbors_of_origin() const {
  const std::size_t d = dim();
  std::vector<IntVector> out;
  IntVector c(d, 0);
  // Row k only involves c_k..c_d, so |c_k + s_k| <= 1 pins c_k to an integer
  // interval once the later coordinates are fixed.
  std::function<void(std::size_t)> visit = [&](std::size_t level) {
    const std::size_t k = level - 1;
    const Rational s = tail_sum(a_, k, c);
    const std::int64_t lo = Rational(-1 - s).ceil().get_si();
    const std::int64_t hi = Rational(1 - s).floor().get_si();
    for (std::int64_t v = lo; v <= hi; ++v) {
      c[k] = v;
      if (k == 0) {
        if (std::any_of(c.begin(), c.end(), [](std::int64_t x) { return x != 0; })) out.push_back(c);
      } else {
        visit(k);
      }
    }
    c[k] = 0;
  };
  visit(d);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MemberId> LatticePartition::members_meeting_box(const QVector& lo, const QVector& hi) const {
  const std::size_t d = dim();
  if (lo.dim() != d || hi.dim() != d) throw Error("members_meeting_box: dimension mismatch");
  std::vector<MemberId> out;
  IntVector m(d, 0);
  // Tile [r, r+1) meets [lo, hi] in coordinate k iff lo_k - 1 < r_k <= hi_k,
  // where r_k = m_k + s_k and s_k depends only on later coordinates.
  std::function<void(std::size_t)> visit = [&](std::size_t level) {
    const std::size_t k = level - 1;
    const Rational s = tail_sum(a_, k, m);
    const std::int64_t first = Rational(lo[k] - 1 - s).floor_i64() + 1;
    const std::int64_t last = Rational(hi[k] - s).floor_i64();
    for (std::int64_t v = first; v <= last; ++v) {
      m[k] = v;
      if (k == 0) {
        out.push_back(MemberId{m});
      } else {
        visit(k);
      }
    }
    m[k] = 0;
  };
  visit(d);
  std::sort(out.begin(), out.end());
  return out;
}

Neighborhood LatticePartition::neighborhood(const QVector& p, const Rational& eps) const {
  if (eps.sign() <= 0) throw Error("neighborhood radius must be positive, got " + eps.str());
  if (p.dim() != dim()) throw Error("neighborhood: dimension mismatch");
  const QVector e = QVector::filled(dim(), eps);
  return Neighborhood{p, eps, members_meeting_box(p - e, p + e)};
}

bool LatticePartition::meets_ball(const MemberId& id, const QVector& p, const Rational& eps) const {
  const QVector r = corner(id);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!(r[i] <= p[i] + eps && r[i] + 1 > p[i] - eps)) return false;
  }
  return true;
}

bool LatticePartition::in_closure(const MemberId& id, const QVector& p) const {
  const QVector r = corner(id);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (p[i] < r[i] || p[i] > r[i] + 1) return false;
  }
  return true;
}

QVector LatticePartition::closure_point(std::span<const MemberId> members) const {
  if (members.empty()) throw Error("closure_point: no members given");
  std::vector<QVector> corners;
  corners.reserve(members.size());
  for (const auto& id : members) {
    if (id.m.size() != dim()) throw Error("closure_point: dimension mismatch");
    corners.push_back(corner(id));
  }
  for (std::size_t i = 0; i < corners.size(); ++i) {
    for (std::size_t j = i + 1; j < corners.size(); ++j) {
      if (linf_dist(corners[i], corners[j]) > 1) {
        throw Error("closure_point: members " + members[i].str() + " and " + members[j].str() +
                    " are not adjacent");
      }
    }
  }
  QVector p(dim());
  const Rational half = rat(1, 2);
  for (std::size_t k = 0; k < dim(); ++k) {
    Rational lo = corners[0][k], hi = corners[0][k];
    for (const auto& c : corners) {
      if (c[k] < lo) lo = c[k];
      if (c[k] > hi) hi = c[k];
    }
    // Midpoint of the extreme centers (lo + 1/2, hi + 1/2).
    p[k] = (lo + hi) * half + half;
  }
  for (const auto& id : members) {
    if (!in_closure(id, p)) throw InternalError("closure point " + p.str() + " misses " + id.str());
  }
  return p;
}

LatticePartition canonical_partition(std::size_t d, std::int64_t k) {
  return LatticePartition::from_reclusive(canonical_reclusive(d, k), "canonical");
}

LatticePartition b_prime(std::size_t d) {
  if (d < 1) throw Error("bprime needs d >= 1");
  QMatrix a = QMatrix::identity(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) a(i, j) = rat(static_cast<long>(j), static_cast<long>(d));
  }
  return LatticePartition::from_matrix(a, "bprime");
}

LatticePartition b_double_prime(std::size_t d) {
  if (d < 1) throw Error("bdoubleprime needs d >= 1");
  QMatrix a = QMatrix::identity(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      // 1-based: (j - i) / (d - i + 1)
      a(i, j) = rat(static_cast<long>(j - i), static_cast<long>(d - i));
    }
  }
  return LatticePartition::from_matrix(a, "bdoubleprime");
}

LatticePartition grid(std::size_t d) {
  if (d < 1) throw Error("grid needs d >= 1");
  return LatticePartition::from_matrix(QMatrix::identity(d), "grid");
}

}  // namespace secluded
