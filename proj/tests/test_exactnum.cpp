#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "secluded/error.hpp"
#include "secluded/exactnum.hpp"

using namespace secluded;

TEST_CASE("rat reduces and normalizes sign") {
  CHECK(rat(2, 4).str() == "1/2");
  CHECK(rat(3, -6).str() == "-1/2");
  CHECK(rat(0, -5).str() == "0");
  CHECK(rat(0, 7).denominator() == 1);
  CHECK_THROWS_AS(rat(1, 0), Error);
}

TEST_CASE("construction is always reduced") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-100000, 100000), den(1, 100000);
  for (int i = 0; i < 2000; ++i) {
    long n = num(rng), d = den(rng);
    if (rng() & 1) d = -d;
    const Rational r = rat(n, d);
    Integer g;
    mpz_gcd(g.get_mpz_t(), r.numerator().get_mpz_t(), r.denominator().get_mpz_t());
    CHECK(g == 1);
    CHECK(r.denominator() > 0);
    CHECK(r * Rational(d) == Rational(n));
  }
}

TEST_CASE("parse accepts fractions, integers and decimals exactly") {
  CHECK(Rational::parse("3/4") == rat(3, 4));
  CHECK(Rational::parse(" -6/8 ") == rat(-3, 4));
  CHECK(Rational::parse("17") == Rational(17));
  CHECK(Rational::parse("0.1") == rat(1, 10));
  CHECK(Rational::parse("-1.25e2") == Rational(-125));
  CHECK(Rational::parse("2.5E-3") == rat(1, 400));
  CHECK(Rational::parse(".5") == rat(1, 2));
  CHECK_THROWS_AS(Rational::parse(""), Error);
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
  CHECK_THROWS_AS(Rational::parse("abc"), Error);
  CHECK_THROWS_AS(Rational::parse("1.2.3"), Error);
}

TEST_CASE("binary doubles convert without rounding") {
  CHECK(Rational::from_double(0.5) == rat(1, 2));
  CHECK(Rational::from_double(0.1) != rat(1, 10));
  CHECK(Rational::from_double(0.1).to_double() == 0.1);
  CHECK(Rational::from_double(-3.0) == Rational(-3));
}

TEST_CASE("floor, ceil and decimal rendering") {
  CHECK(rat(7, 2).floor() == 3);
  CHECK(rat(-7, 2).floor() == -4);
  CHECK(rat(-7, 2).ceil() == -3);
  CHECK(Rational(4).floor() == 4);
  CHECK(rat(2, 3).to_decimal(4) == "0.6667");
  CHECK(rat(-1, 8).to_decimal(2) == "-0.13");
  CHECK(rat(-1, 1000).to_decimal(2) == "0.00");
  CHECK(Rational(12).to_decimal(0) == "12");
  CHECK(rat(1, 3).to_long_double() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("mat_vec_mul") {
  const QVector v{rat(1, 3), Rational(-2), rat(5, 7)};
  CHECK(mat_vec_mul(QMatrix::identity(3), v) == v);

  const QMatrix a({{Rational(1), rat(1, 2)}, {Rational(0), Rational(1)}});
  CHECK(mat_vec_mul(a, QVector{Rational(0), Rational(1)}) == QVector{rat(1, 2), Rational(1)});

  const QMatrix b5({{1, rat(1, 5), rat(2, 5), rat(3, 5), rat(4, 5)},
                    {0, 1, rat(2, 5), rat(3, 5), rat(4, 5)},
                    {0, 0, 1, rat(3, 5), rat(4, 5)},
                    {0, 0, 0, 1, rat(4, 5)},
                    {0, 0, 0, 0, 1}});
  const std::vector<std::int64_t> c{0, 1, -1, 0, 1};
  CHECK(mat_vec_mul(b5, c) == QVector{rat(3, 5), rat(7, 5), rat(-1, 5), rat(4, 5), Rational(1)});
  CHECK_THROWS_AS(mat_vec_mul(a, QVector{Rational(1)}), Error);
}

TEST_CASE("inverse of unitriangular matrices") {
  CHECK(inverse_upper_unitriangular(QMatrix::identity(4)) == QMatrix::identity(4));
  const QMatrix a({{Rational(1), rat(1, 2)}, {Rational(0), Rational(1)}});
  CHECK(inverse_upper_unitriangular(a) == QMatrix({{Rational(1), rat(-1, 2)}, {Rational(0), Rational(1)}}));
  CHECK_THROWS_AS(inverse_upper_unitriangular(QMatrix({{Rational(2), Rational(0)}, {Rational(0), Rational(1)}})), Error);
  CHECK_THROWS_AS(inverse_upper_unitriangular(QMatrix({{Rational(1), Rational(0)}, {Rational(1), Rational(1)}})), Error);
}

TEST_CASE("property: A * inv(A) = inv(A) * A = I for random unitriangular A") {
  std::mt19937_64 rng(3);
  for (std::size_t d = 1; d <= 8; ++d) {
    for (int t = 0; t < 10; ++t) {
      QMatrix a = QMatrix::identity(d);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) a(i, j) = oracle::random_rational(rng, -2, 2, 9);
      }
      const QMatrix inv = inverse_upper_unitriangular(a);
      CHECK(mat_mul(a, inv) == QMatrix::identity(d));
      CHECK(mat_mul(inv, a) == QMatrix::identity(d));
    }
  }
}

TEST_CASE("linf_dist examples") {
  CHECK(linf_dist(QVector{0, 0}, QVector{0, 0}) == 0);
  CHECK(linf_dist(QVector{rat(1, 2), Rational(1)}, QVector{0, 0}) == 1);
  CHECK(linf_dist(QVector{rat(3, 5), rat(7, 5), rat(-1, 5), rat(4, 5), 1},
                  QVector{rat(2, 5), rat(2, 5), rat(-1, 5), rat(4, 5), 1}) == 1);
  CHECK_THROWS_AS(linf_dist(QVector{0}, QVector{0, 0}), Error);
}

TEST_CASE("property: linf_dist is a metric") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 500; ++t) {
    const std::size_t d = 1 + rng() % 5;
    const QVector x = oracle::random_point(rng, d, -3, 3, 12);
    const QVector y = oracle::random_point(rng, d, -3, 3, 12);
    const QVector z = oracle::random_point(rng, d, -3, 3, 12);
    CHECK(linf_dist(x, y) == linf_dist(y, x));
    CHECK((linf_dist(x, y) == 0) == (x == y));
    CHECK(linf_dist(x, x) == 0);
    CHECK(linf_dist(x, z) <= linf_dist(x, y) + linf_dist(y, z));
  }
}

TEST_CASE("QVector parse and print") {
  CHECK(QVector::parse("(1/2, 0.25, -3)") == QVector{rat(1, 2), rat(1, 4), Rational(-3)});
  CHECK(QVector::parse("1,2").csv() == "1,2");
  CHECK(QVector{rat(1, 2), Rational(1)}.str() == "(1/2, 1)");
  CHECK_THROWS_AS(QVector::parse(""), Error);
  CHECK_THROWS_AS(QVector(0), Error);
}
