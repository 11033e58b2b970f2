#pragma once

// Exact rational scalars, vectors and square matrices.
//
// Every boundary-sensitive predicate in the library (cube membership,
// adjacency, ball intersection) is decided on these types, so nothing here
// ever rounds. Numerators and denominators are GMP integers and cannot
// overflow.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "secluded/error.hpp"

namespace secluded {

using Integer = mpz_class;
using IntVector = std::vector<std::int64_t>;

class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : q_(value) {}   // NOLINT(google-explicit-constructor)
  explicit Rational(const Integer& value) : q_(value) {}
  /// Throws Error on a zero denominator.
  Rational(const Integer& num, const Integer& den);

  /// Parses "p/q", "p", or a decimal such as "-0.375" or "1.5e-3".
  static Rational parse(std::string_view text);
  /// Exact value of a finite binary double.
  static Rational from_double(double value);

  Integer numerator() const { return q_.get_num(); }
  Integer denominator() const { return q_.get_den(); }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  /// Largest integer not above the value.
  Integer floor() const;
  /// Smallest integer not below the value.
  Integer ceil() const;
  /// floor() narrowed to int64; throws Error when out of range.
  std::int64_t floor_i64() const;
  /// Throws Error unless the value is an integer that fits in int64.
  std::int64_t to_i64() const;

  double to_double() const { return q_.get_d(); }
  long double to_long_double() const;

  /// "p/q", or "p" when the denominator is 1.
  std::string str() const;
  /// Decimal expansion rounded half away from zero to `digits` fractional digits.
  std::string to_decimal(int digits) const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  const mpq_class& raw() const { return q_; }

 private:
  explicit Rational(mpq_class q) : q_(std::move(q)) {}
  mpq_class q_;
};

/// Reduced fraction num/den. Throws Error when den == 0.
Rational rat(const Integer& num, const Integer& den);
inline Rational rat(long num, long den) { return rat(Integer(num), Integer(den)); }

Rational abs(const Rational& r);
const Rational& max(const Rational& a, const Rational& b);
const Rational& min(const Rational& a, const Rational& b);

std::ostream& operator<<(std::ostream& os, const Rational& r);

class QVector {
 public:
  /// Zero vector of dimension d (d >= 1).
  explicit QVector(std::size_t d);
  QVector(std::initializer_list<Rational> coords);
  explicit QVector(std::vector<Rational> coords);
  static QVector from_ints(std::span<const std::int64_t> coords);
  static QVector filled(std::size_t d, const Rational& value);

  std::size_t dim() const { return c_.size(); }
  const Rational& operator[](std::size_t i) const { return c_[i]; }
  Rational& operator[](std::size_t i) { return c_[i]; }
  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }

  bool all_integer() const;
  /// Throws Error if any coordinate is not an int64 integer.
  IntVector to_ints() const;

  QVector& operator+=(const QVector& rhs);
  QVector& operator-=(const QVector& rhs);
  QVector& operator*=(const Rational& s);
  friend QVector operator+(QVector a, const QVector& b) { return a += b; }
  friend QVector operator-(QVector a, const QVector& b) { return a -= b; }
  friend QVector operator*(QVector a, const Rational& s) { return a *= s; }
  friend QVector operator*(const Rational& s, QVector a) { return a *= s; }

  friend bool operator==(const QVector&, const QVector&) = default;
  friend auto operator<=>(const QVector&, const QVector&) = default;

  /// "(a, b, c)" with exact rational coordinates.
  std::string str() const;
  /// "a,b,c", the CSV row format.
  std::string csv() const;
  /// Parses comma-separated rationals or decimals; parentheses and blanks are ignored.
  static QVector parse(std::string_view text);

 private:
  std::vector<Rational> c_;
};

std::ostream& operator<<(std::ostream& os, const QVector& v);

class QMatrix {
 public:
  /// Zero matrix of dimension d (d >= 1).
  explicit QMatrix(std::size_t d);
  /// Rows must all have length rows.size().
  explicit QMatrix(const std::vector<std::vector<Rational>>& rows);
  static QMatrix identity(std::size_t d);

  std::size_t dim() const { return d_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return e_[i * d_ + j]; }
  Rational& operator()(std::size_t i, std::size_t j) { return e_[i * d_ + j]; }
  QVector row(std::size_t i) const;

  bool is_upper_unitriangular() const;
  /// Least common multiple of all entry denominators.
  Integer common_denominator() const;

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

  std::string str() const;

 private:
  std::size_t d_;
  std::vector<Rational> e_;
};

/// Throws Error on dimension mismatch.
QVector mat_vec_mul(const QMatrix& a, const QVector& v);
QVector mat_vec_mul(const QMatrix& a, std::span<const std::int64_t> v);
QMatrix mat_mul(const QMatrix& a, const QMatrix& b);

/// Exact inverse by back substitution. Throws Error unless `a` is upper
/// triangular with unit diagonal.
QMatrix inverse_upper_unitriangular(const QMatrix& a);

/// max_i |u_i - v_i|. Throws Error on dimension mismatch.
Rational linf_dist(const QVector& u, const QVector& v);
Rational linf_norm(const QVector& v);

}  // namespace secluded
