#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "secluded/exactnum.hpp"
#include "secluded/lattice.hpp"
#include "secluded/schemes.hpp"

namespace secluded::cli {

enum ExitCode : int { kOk = 0, kDomainError = 1, kUsageError = 2, kCounterexample = 3 };

struct MatrixSpec {
  std::string raw;
  /// "canonical", "grid", "bprime", "bdoubleprime", or "file".
  std::string kind;
  std::size_t d = 0;
  std::int64_t k = 0;  // canonical only
  std::string path;    // file only
};

/// "canonical:d[:k]", "grid:d", "bprime:d", "bdoubleprime:d", or a path to a
/// matrix JSON file {"d": n, "entries": [["1", "1/2"], ...]}.
MatrixSpec parse_matrix_spec(std::string_view s);
LatticePartition build_partition(const MatrixSpec& spec);
/// Reclusive matrix behind the spec; throws ReclusiveViolation otherwise.
ReclusiveMatrix build_reclusive(const MatrixSpec& spec);
QMatrix parse_matrix_json(std::string_view text);

struct FloorSpec {
  Rational alpha, beta, gamma;
};
struct HKSpec {
  std::size_t d;
  Rational eps;
};
struct ReclusiveSpec {
  std::size_t d;
  std::int64_t k;
  Rational eps;
};
using SchemeSpec = std::variant<FloorSpec, HKSpec, ReclusiveSpec>;

/// "floor:alpha[:beta[:gamma]]", "hk:d:eps", "reclusive:d[:k]:eps".
SchemeSpec parse_scheme_spec(std::string_view s);
/// Floor schemes take their dimension from `d`; the others check it.
RoundingFn make_rounding(const SchemeSpec& spec, std::size_t d);

struct RenderOptions {
  Rational lo = -3, hi = 3;  // window [lo, hi]^2
  std::optional<std::pair<QVector, Rational>> ball;
  bool clique_color = false;
};

/// SVG 1.1 drawing of the tiles meeting the window. d = 2 only.
std::string render_svg(const LatticePartition& p, const RenderOptions& opts);

/// Entry point behind the executable; argv excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace secluded::cli
