#include "secluded/schemes.hpp"

namespace secluded {

FloorScheme::FloorScheme(Rational alpha, QVector beta, QVector gamma)
    : alpha_(std::move(alpha)), beta_(std::move(beta)), gamma_(std::move(gamma)) {
  if (alpha_.sign() <= 0) throw Error("floor scheme width alpha must be positive, got " + alpha_.str());
  if (beta_.dim() != gamma_.dim()) throw Error("floor scheme: beta and gamma dimensions differ");
}

FloorScheme::FloorScheme(Rational alpha, std::size_t d)
    : FloorScheme(std::move(alpha), QVector(d), QVector(d)) {}

QVector floor_round(const FloorScheme& s, const QVector& x) {
  if (x.dim() != s.dim()) throw Error("floor_round: dimension mismatch");
  QVector out(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const Integer n = Rational((x[i] - s.beta()[i]) / s.alpha()).floor();
    out[i] = s.alpha() * Rational(n) + s.gamma()[i];
  }
  return out;
}

FloorScheme saks_zhou_scheme(std::size_t len, unsigned t, unsigned big_d, std::uint64_t j) {
  if (big_d >= 63) throw Error("saks-zhou: D too large");
  const Integer levels = Integer(1) << big_d;
  if (Integer(static_cast<unsigned long>(j)) >= levels) throw Error("saks-zhou: j must be below 2^D");
  const Rational alpha(Integer(1), Integer(1) << t);
  const Rational beta(Integer(static_cast<unsigned long>(j)), levels);
  return FloorScheme(alpha, QVector::filled(len, beta), QVector(len));
}

FloorScheme goldreich_scheme(std::size_t d, const Rational& eps, std::uint64_t j) {
  const auto count = static_cast<std::uint64_t>(10 * d * d);
  if (j < 1 || j > count) throw Error("goldreich: j must lie in [1, 10 d^2]");
  const Rational step = eps / Rational(static_cast<long>(count));
  const Rational beta = -(Rational(static_cast<long>(j)) - rat(1, 2)) * step;
  return FloorScheme(eps, QVector::filled(d, beta), QVector(d));
}

HKScheme::HKScheme(std::size_t d, Rational eps) : d_(d), eps_(std::move(eps)) {
  if (d < 1) throw Error("hk scheme needs d >= 1");
  if (eps_.sign() <= 0) throw Error("hk scheme eps must be positive, got " + eps_.str());
  len_ = 2 * eps_ * Rational(static_cast<long>(d + 1));
  for (std::size_t k = 1; k <= d + 1; ++k) {
    shifts_.push_back(QVector::filled(d, 2 * eps_ * Rational(static_cast<long>(k))));
  }
}

namespace {

// Closed interval [c - eps, c + eps] inside one half-open cell [n L, (n+1) L)?
bool fits_one_cell(const Rational& c, const Rational& eps, const Rational& len) {
  const Integer n = Rational((c - eps) / len).floor();
  return c + eps < Rational(Integer(n + 1)) * len;
}

}  // namespace

ShiftChoice hk_shift_select(const HKScheme& s, const QVector& x) {
  if (x.dim() != s.dim()) throw Error("hk_shift_select: dimension mismatch");
  for (std::size_t k = 1; k <= s.dim() + 1; ++k) {
    const Rational shift = s.shifts()[k - 1][0];
    bool ok = true;
    for (std::size_t i = 0; i < x.dim() && ok; ++i) ok = fits_one_cell(x[i] + shift, s.eps(), s.interval_len());
    if (ok) return {k, s.shifts()[k - 1]};
  }
  throw InternalError("no admissible shift for " + x.str());
}

QVector hk_round(const HKScheme& s, const QVector& x) {
  const ShiftChoice choice = hk_shift_select(s, x);
  QVector out(x.dim());
  const Rational half_len = s.interval_len() * rat(1, 2);
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const Integer n = Rational((x[i] + choice.shift[i]) / s.interval_len()).floor();
    out[i] = Rational(n) * s.interval_len() + half_len;
  }
  return out;
}

QVector shift_round(const ShiftRounding& spec, const QVector& x) {
  const std::size_t idx = spec.select(x);
  if (idx >= spec.shifts.size()) throw Error("shift_round: selector returned an index outside the shift set");
  const QVector y = x + spec.shifts[idx];
  if (const auto bad = spec.box_escape(y, spec.eps)) {
    throw Error("shift_round: eps-ball around the shifted point leaves its member along coordinate " +
                std::to_string(*bad + 1));
  }
  return spec.member_rep(y);
}

ShiftRounding hk_shift_rounding(const HKScheme& s) {
  ShiftRounding spec;
  spec.eps = s.eps();
  spec.shifts = s.shifts();
  spec.select = [s](const QVector& x) { return hk_shift_select(s, x).k - 1; };
  const Rational len = s.interval_len();
  spec.member_rep = [len](const QVector& y) {
    QVector out(y.dim());
    for (std::size_t i = 0; i < y.dim(); ++i) {
      out[i] = Rational(Rational(y[i] / len).floor()) * len + len * rat(1, 2);
    }
    return out;
  };
  spec.box_escape = [len](const QVector& y, const Rational& eps) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < y.dim(); ++i) {
      if (!fits_one_cell(y[i], eps, len)) return i;
    }
    return std::nullopt;
  };
  return spec;
}

ReclusiveRounder::ReclusiveRounder(ReclusiveMatrix a, Rational eps) : a_(std::move(a)), eps_(std::move(eps)) {
  if (eps_.sign() <= 0) throw Error("reclusive rounding eps must be positive, got " + eps_.str());
  scale_ = a_.delta() / eps_;
}

Rational ReclusiveRounder::error_bound() const { return eps_ * (1 / a_.delta() + 1); }

QVector reclusive_round(const ReclusiveRounder& r, const QVector& alpha) {
  if (alpha.dim() != r.matrix().dim()) throw Error("reclusive_round: dimension mismatch");
  const QVector scaled = alpha * r.scale();
  QVector corner = representative(r.matrix(), scaled);
  return corner * (1 / r.scale());
}

InducedPartition scheme_to_partition(RoundingFn f) { return InducedPartition(std::move(f)); }

RoundingFn partition_to_scheme(LatticePartition p, std::optional<QVector> offset) {
  if (offset && offset->dim() != p.dim()) throw Error("partition_to_scheme: offset dimension mismatch");
  return [p = std::move(p), offset = std::move(offset)](const QVector& x) {
    QVector r = p.corner(p.member_of(x));
    if (offset) r += *offset;
    return r;
  };
}

RoundingFn as_rounding_fn(FloorScheme s) {
  return [s = std::move(s)](const QVector& x) { return floor_round(s, x); };
}

RoundingFn as_rounding_fn(HKScheme s) {
  return [s = std::move(s)](const QVector& x) { return hk_round(s, x); };
}

RoundingFn as_rounding_fn(ReclusiveRounder r) {
  return [r = std::move(r)](const QVector& x) { return reclusive_round(r, x); };
}

}  // namespace secluded
