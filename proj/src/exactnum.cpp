#include "secluded/exactnum.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace secluded {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                std::to_string(b) + ")");
  }
}

bool fits_i64(const Integer& z) {
  return mpz_cmp_si(z.get_mpz_t(), std::numeric_limits<long>::min()) >= 0 &&
         mpz_cmp_si(z.get_mpz_t(), std::numeric_limits<long>::max()) <= 0;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  std::string_view body = s;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  if (!all_digits(body)) throw Error("malformed number: '" + std::string(whole) + "'");
  std::string buf(s.front() == '+' ? s.substr(1) : s);
  return Integer(buf, 10);
}

Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational rat(const Integer& num, const Integer& den) { return Rational(num, den); }

Rational Rational::parse(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw Error("empty number");

  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const Integer num = parse_integer(trim(s.substr(0, slash)), s);
    const Integer den = parse_integer(trim(s.substr(slash + 1)), s);
    return Rational(num, den);
  }

  // Decimal: [sign] digits [. digits] [e [sign] digits]
  std::string_view mant = s;
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mant = s.substr(0, e);
    const Integer ez = parse_integer(s.substr(e + 1), s);
    if (!fits_i64(ez) || ez > 100000 || ez < -100000) throw Error("exponent out of range: " + std::string(s));
    exponent = ez.get_si();
  }
  bool negative = false;
  if (!mant.empty() && (mant.front() == '-' || mant.front() == '+')) {
    negative = mant.front() == '-';
    mant.remove_prefix(1);
  }
  std::string digits;
  long frac_len = 0;
  if (const auto dot = mant.find('.'); dot != std::string_view::npos) {
    const auto ip = mant.substr(0, dot);
    const auto fp = mant.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) {
      throw Error("malformed number: '" + std::string(s) + "'");
    }
    digits = std::string(ip) + std::string(fp);
    frac_len = static_cast<long>(fp.size());
  } else {
    if (!all_digits(mant)) throw Error("malformed number: '" + std::string(s) + "'");
    digits = std::string(mant);
  }
  Integer num(digits, 10);
  if (negative) num = -num;
  const long shift = exponent - frac_len;
  if (shift >= 0) return Rational(num * pow10(static_cast<unsigned long>(shift)), Integer(1));
  return Rational(num, pow10(static_cast<unsigned long>(-shift)));
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw Error("non-finite value has no rational form");
  mpq_class q(value);  // exact: every finite double is a dyadic rational
  return Rational(std::move(q));
}

Integer Rational::floor() const {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

Integer Rational::ceil() const {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

std::int64_t Rational::floor_i64() const {
  const Integer f = floor();
  if (!fits_i64(f)) throw Error("integer coordinate out of int64 range: " + f.get_str());
  return f.get_si();
}

std::int64_t Rational::to_i64() const {
  if (!is_integer()) throw Error("expected an integer, got " + str());
  return floor_i64();
}

long double Rational::to_long_double() const {
  if (sgn(q_) == 0) return 0.0L;
  // Scale |num| so that the integer quotient carries ~66 significant bits.
  const Integer num = abs(q_.get_num());
  const long shift = 66 + static_cast<long>(mpz_sizeinbase(q_.get_den_mpz_t(), 2)) -
                     static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2));
  Integer scaled = num;
  if (shift > 0) {
    scaled <<= static_cast<unsigned long>(shift);
  } else {
    scaled >>= static_cast<unsigned long>(-shift);
  }
  Integer quotient;
  mpz_tdiv_q(quotient.get_mpz_t(), scaled.get_mpz_t(), q_.get_den_mpz_t());
  const Integer hi = quotient >> 32;
  const Integer lo = quotient - (hi << 32);
  const long double mag =
      std::ldexp(static_cast<long double>(hi.get_ui()), 32) + static_cast<long double>(lo.get_ui());
  const long double value = std::ldexp(mag, static_cast<int>(-shift));
  return sgn(q_) < 0 ? -value : value;
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::to_decimal(int digits) const {
  if (digits < 0) digits = 0;
  const Integer scale = pow10(static_cast<unsigned long>(digits));
  Integer num = abs(q_.get_num()) * scale * 2 + q_.get_den();
  Integer den = q_.get_den() * 2;
  Integer scaled;
  mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());  // round half up on |x|
  std::string body = scaled.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits)) {
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  const bool negative = sgn(q_) < 0 && scaled != 0;
  return negative ? "-" + body : body;
}

Rational Rational::operator-() const { return Rational(mpq_class(-q_)); }
Rational& Rational::operator+=(const Rational& rhs) {
  q_ += rhs.q_;
  return *this;
}
Rational& Rational::operator-=(const Rational& rhs) {
  q_ -= rhs.q_;
  return *this;
}
Rational& Rational::operator*=(const Rational& rhs) {
  q_ *= rhs.q_;
  return *this;
}
Rational& Rational::operator/=(const Rational& rhs) {
  if (sgn(rhs.q_) == 0) throw Error("division by zero");
  q_ /= rhs.q_;
  return *this;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }
const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

// ---------------------------------------------------------------- QVector

QVector::QVector(std::size_t d) : c_(d) {
  if (d == 0) throw Error("vector dimension must be at least 1");
}

QVector::QVector(std::initializer_list<Rational> coords) : c_(coords) {
  if (c_.empty()) throw Error("vector dimension must be at least 1");
}

QVector::QVector(std::vector<Rational> coords) : c_(std::move(coords)) {
  if (c_.empty()) throw Error("vector dimension must be at least 1");
}

QVector QVector::from_ints(std::span<const std::int64_t> coords) {
  std::vector<Rational> c;
  c.reserve(coords.size());
  for (auto v : coords) c.emplace_back(static_cast<long>(v));
  return QVector(std::move(c));
}

QVector QVector::filled(std::size_t d, const Rational& value) {
  return QVector(std::vector<Rational>(d, value));
}

bool QVector::all_integer() const {
  for (const auto& r : c_) {
    if (!r.is_integer()) return false;
  }
  return true;
}

IntVector QVector::to_ints() const {
  IntVector out;
  out.reserve(c_.size());
  for (const auto& r : c_) out.push_back(r.to_i64());
  return out;
}

QVector& QVector::operator+=(const QVector& rhs) {
  require_same_dim(dim(), rhs.dim(), "vector add");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
  return *this;
}

QVector& QVector::operator-=(const QVector& rhs) {
  require_same_dim(dim(), rhs.dim(), "vector subtract");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= rhs.c_[i];
  return *this;
}

QVector& QVector::operator*=(const Rational& s) {
  for (auto& r : c_) r *= s;
  return *this;
}

std::string QVector::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ", ";
    out += c_[i].str();
  }
  return out + ")";
}

std::string QVector::csv() const {
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ",";
    out += c_[i].str();
  }
  return out;
}

QVector QVector::parse(std::string_view text) {
  std::string cleaned;
  for (char ch : text) {
    if (ch != '(' && ch != ')' && ch != '[' && ch != ']') cleaned += ch;
  }
  std::vector<Rational> coords;
  std::string_view rest = cleaned;
  while (true) {
    const auto comma = rest.find(',');
    coords.push_back(Rational::parse(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return QVector(std::move(coords));
}

std::ostream& operator<<(std::ostream& os, const QVector& v) { return os << v.str(); }

// ---------------------------------------------------------------- QMatrix

QMatrix::QMatrix(std::size_t d) : d_(d), e_(d * d) {
  if (d == 0) throw Error("matrix dimension must be at least 1");
}

QMatrix::QMatrix(const std::vector<std::vector<Rational>>& rows) : QMatrix(rows.size()) {
  for (std::size_t i = 0; i < d_; ++i) {
    if (rows[i].size() != d_) {
      throw Error("matrix is not square: row " + std::to_string(i + 1) + " has " +
                  std::to_string(rows[i].size()) + " entries, expected " + std::to_string(d_));
    }
    for (std::size_t j = 0; j < d_; ++j) (*this)(i, j) = rows[i][j];
  }
}

QMatrix QMatrix::identity(std::size_t d) {
  QMatrix m(d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = 1;
  return m;
}

QVector QMatrix::row(std::size_t i) const {
  return QVector(std::vector<Rational>(e_.begin() + static_cast<std::ptrdiff_t>(i * d_),
                                       e_.begin() + static_cast<std::ptrdiff_t>((i + 1) * d_)));
}

bool QMatrix::is_upper_unitriangular() const {
  for (std::size_t i = 0; i < d_; ++i) {
    if ((*this)(i, i) != 1) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if ((*this)(i, j) != 0) return false;
    }
  }
  return true;
}

Integer QMatrix::common_denominator() const {
  Integer l = 1;
  for (const auto& r : e_) {
    const Integer den = r.denominator();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
  }
  return l;
}

std::string QMatrix::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < d_; ++i) {
    if (i) out += ", ";
    out += "[";
    for (std::size_t j = 0; j < d_; ++j) {
      if (j) out += ", ";
      out += (*this)(i, j).str();
    }
    out += "]";
  }
  return out + "]";
}

QVector mat_vec_mul(const QMatrix& a, const QVector& v) {
  require_same_dim(a.dim(), v.dim(), "matrix-vector product");
  QVector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Rational acc;
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (a(i, j).sign() != 0 && v[j].sign() != 0) acc += a(i, j) * v[j];
    }
    out[i] = std::move(acc);
  }
  return out;
}

QVector mat_vec_mul(const QMatrix& a, std::span<const std::int64_t> v) {
  require_same_dim(a.dim(), v.size(), "matrix-vector product");
  QVector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Rational acc;
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (v[j] != 0 && a(i, j).sign() != 0) acc += a(i, j) * Rational(static_cast<long>(v[j]));
    }
    out[i] = std::move(acc);
  }
  return out;
}

QMatrix mat_mul(const QMatrix& a, const QMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "matrix product");
  const std::size_t d = a.dim();
  QMatrix out(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Rational acc;
      for (std::size_t k = 0; k < d; ++k) acc += a(i, k) * b(k, j);
      out(i, j) = std::move(acc);
    }
  }
  return out;
}

QMatrix inverse_upper_unitriangular(const QMatrix& a) {
  if (!a.is_upper_unitriangular()) {
    throw Error("matrix is not upper triangular with unit diagonal");
  }
  // Column j of the inverse solves A x = e_j, back to front.
  const std::size_t d = a.dim();
  QMatrix inv(d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t ii = d; ii-- > 0;) {
      Rational x = ii == j ? Rational(1) : Rational(0);
      for (std::size_t k = ii + 1; k < d; ++k) x -= a(ii, k) * inv(k, j);
      inv(ii, j) = std::move(x);
    }
  }
  return inv;
}

Rational linf_dist(const QVector& u, const QVector& v) {
  require_same_dim(u.dim(), v.dim(), "linf_dist");
  Rational best;
  for (std::size_t i = 0; i < u.dim(); ++i) {
    Rational diff = abs(u[i] - v[i]);
    if (diff > best) best = std::move(diff);
  }
  return best;
}

Rational linf_norm(const QVector& v) { return linf_dist(v, QVector(v.dim())); }

}  // namespace secluded
