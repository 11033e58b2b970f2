#pragma once

// (d+1)-pseudodeterministic estimation of d averages: Hoeffding sampling to
// accuracy eps/(d+1), then reclusive rounding with the canonical matrix
// (Delta_A = 1/d), which widens the error to eps and confines the output to
// at most d+1 values per input with probability >= 1 - delta.
//
// For Goldreich's k-pseudodeterminism threshold one also needs
// 1 - delta >= (d+2)/(d+3); that condition is documented, not enforced.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string_view>

#include "secluded/exactnum.hpp"

namespace secluded {

struct SampleOracle {
  std::size_t d = 0;
  /// One draw of function i, a value in [0,1].
  std::function<Rational(std::size_t i, std::mt19937_64& rng)> draw;
  /// Known means, for fixtures.
  std::optional<QVector> true_means;
};

/// f_i == c_i.
SampleOracle constant_oracle(const QVector& values);
/// f_i ~ Bernoulli(p_i); exact for rational p_i.
SampleOracle bernoulli_oracle(const QVector& probabilities);
/// {"kind": "constant", "values": [...]} or {"kind": "bernoulli", "means": [...]};
/// numbers may be JSON numbers or "p/q" strings.
SampleOracle oracle_from_json(std::string_view text);

struct EstimateResult {
  QVector output;
  /// Exact per-function sample averages before rounding.
  QVector sample_means;
  std::uint64_t samples_used = 0;
  std::uint64_t seed = 0;
};

/// ceil((d+1)^2 / (2 eps^2) * ln(2d / delta)): two-sided Hoeffding at
/// accuracy eps/(d+1) and failure delta/d per function.
/// Requires d >= 1, eps > 0, 0 < delta < 1/2.
std::uint64_t sample_count(std::size_t d, const Rational& eps, const Rational& delta);

/// Draws sample_count(...) values per function from per-function substreams
/// of `seed`, averages exactly, and rounds with the canonical reclusive matrix
/// at inner accuracy eps/(d+1).
EstimateResult estimate_means(const SampleOracle& oracle, const Rational& eps, const Rational& delta,
                              std::uint64_t seed);

}  // namespace secluded
