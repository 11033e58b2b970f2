#include "secluded/estimator.hpp"

#include <cmath>

#include <json.hpp>

#include "secluded/reclusive.hpp"
#include "secluded/schemes.hpp"

namespace secluded {

namespace {

void require_unit_interval(const QVector& v, const char* what) {
  for (const auto& x : v) {
    if (x < 0 || x > 1) throw Error(std::string(what) + " must lie in [0,1], got " + x.str());
  }
}

Rational json_rational(const nlohmann::json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_number()) return Rational::parse(j.dump());  // decimal text, not the binary double
  throw Error("expected a number or \"p/q\" string in oracle spec");
}

}  // namespace

SampleOracle constant_oracle(const QVector& values) {
  require_unit_interval(values, "constant oracle value");
  SampleOracle o;
  o.d = values.dim();
  o.true_means = values;
  o.draw = [values](std::size_t i, std::mt19937_64&) { return values[i]; };
  return o;
}

SampleOracle bernoulli_oracle(const QVector& probabilities) {
  require_unit_interval(probabilities, "bernoulli mean");
  SampleOracle o;
  o.d = probabilities.dim();
  o.true_means = probabilities;
  // Pr[u < num] = num/den for u uniform on [0, den).
  std::vector<std::pair<std::uint64_t, std::uint64_t>> fractions;
  for (const auto& p : probabilities) {
    const Integer num = p.numerator(), den = p.denominator();
    if (den > Integer(static_cast<unsigned long>(std::numeric_limits<std::uint64_t>::max() / 2))) {
      throw Error("bernoulli mean denominator too large: " + p.str());
    }
    fractions.emplace_back(num.get_ui(), den.get_ui());
  }
  o.draw = [fractions](std::size_t i, std::mt19937_64& rng) {
    const auto [num, den] = fractions[i];
    std::uniform_int_distribution<std::uint64_t> u(0, den - 1);
    return Rational(u(rng) < num ? 1 : 0);
  };
  return o;
}

SampleOracle oracle_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("invalid oracle JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind")) throw Error("oracle spec needs a \"kind\" field");
  const std::string kind = j.at("kind").get<std::string>();
  const char* key = kind == "constant" ? "values" : "means";
  if (kind != "constant" && kind != "bernoulli") throw Error("unknown oracle kind: " + kind);
  if (!j.contains(key) || !j.at(key).is_array() || j.at(key).empty()) {
    throw Error(std::string("oracle spec needs a non-empty \"") + key + "\" array");
  }
  std::vector<Rational> values;
  for (const auto& v : j.at(key)) values.push_back(json_rational(v));
  const QVector vec(std::move(values));
  return kind == "constant" ? constant_oracle(vec) : bernoulli_oracle(vec);
}

std::uint64_t sample_count(std::size_t d, const Rational& eps, const Rational& delta) {
  if (d < 1) throw Error("sample_count: d must be at least 1");
  if (eps.sign() <= 0) throw Error("sample_count: eps must be positive");
  if (delta.sign() <= 0 || delta >= rat(1, 2)) {
    throw Error("sample_count: delta must lie in (0, 1/2), got " + delta.str());
  }
  const long double e = eps.to_long_double();
  const long double dp1 = static_cast<long double>(d + 1);
  const long double log_term = std::log(2.0L * static_cast<long double>(d) / delta.to_long_double());
  const long double m = dp1 * dp1 / (2.0L * e * e) * log_term;
  return static_cast<std::uint64_t>(std::ceil(m));
}

EstimateResult estimate_means(const SampleOracle& oracle, const Rational& eps, const Rational& delta,
                              std::uint64_t seed) {
  const std::size_t d = oracle.d;
  const std::uint64_t m = sample_count(d, eps, delta);
  QVector means(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    Rational sum;
    for (std::uint64_t s = 0; s < m; ++s) {
      Rational v = oracle.draw(i, rng);
      if (v < 0 || v > 1) throw Error("oracle draw outside [0,1]: " + v.str());
      sum += v;
    }
    means[i] = sum / Rational(Integer(static_cast<unsigned long>(m)));
  }
  const Rational inner = eps / Rational(static_cast<long>(d + 1));
  const ReclusiveRounder rounder(canonical_reclusive(d, static_cast<std::int64_t>(d)), inner);
  return EstimateResult{reclusive_round(rounder, means), means, m, seed};
}

}  // namespace secluded
