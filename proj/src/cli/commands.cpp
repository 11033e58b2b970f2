#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "secluded/analysis.hpp"
#include "secluded/cli.hpp"
#include "secluded/error.hpp"
#include "secluded/estimator.hpp"

namespace secluded::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Printer {
  int decimals = -1;

  std::string scalar(const Rational& v) const {
    if (decimals < 0) return v.str();
    return v.to_decimal(decimals) + " [" + std::to_string(decimals) + "dp]";
  }
  std::string vec(const QVector& v) const {
    if (decimals < 0) return v.str();
    std::string s = "(";
    for (std::size_t i = 0; i < v.dim(); ++i) s += (i ? ", " : "") + v[i].to_decimal(decimals);
    return s + ") [" + std::to_string(decimals) + "dp]";
  }
  std::string csv(const QVector& v) const {
    if (decimals < 0) return v.csv();
    std::string s;
    for (std::size_t i = 0; i < v.dim(); ++i) s += (i ? "," : "") + v[i].to_decimal(decimals);
    return s;
  }
};

std::uint64_t default_seed() {
  const char* env = std::getenv("SECLUDED_SEED");
  if (env == nullptr || *env == '\0') return 1;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("SECLUDED_SEED is not a non-negative integer: '") + env + "'");
  }
}

Rational positive(const std::string& text, const char* what) {
  Rational v = Rational::parse(text);
  if (v.sign() <= 0) throw Error(std::string(what) + " must be positive, got " + v.str());
  return v;
}

void print_members(std::ostream& out, const LatticePartition& p, const std::vector<MemberId>& ms, const Printer& pr) {
  for (const auto& id : ms) out << "  m " << id.str() << " corner " << pr.vec(p.corner(id)) << "\n";
}

std::string slurp(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Secluded unit-hypercube partitions and deterministic rounding"};
  app.name("secluded");
  app.require_subcommand(1);
  app.fallthrough();
  int decimals = -1;
  app.add_option("--decimals", decimals, "Print decimals with N digits instead of exact rationals")
      ->check(CLI::Range(0, 200));

  std::string matrix, point, eps_text, scheme, csv_path, m_text, oracle, window = "-3,3", ball, out_path;
  std::size_t k = 0, trials = 100000, bounds_d = 0;
  std::string diameter = "1", delta_text;
  std::uint64_t seed = 0;
  bool json = false, colored = false;

  auto* validate = app.add_subcommand("validate", "Check the reclusive conditions and report Delta_A");
  validate->add_option("--matrix", matrix, "Matrix spec")->required();

  auto* round = app.add_subcommand("round", "Round a point or a CSV of points");
  round->add_option("--scheme", scheme, "floor:alpha[:beta[:gamma]] | hk:d:eps | reclusive:d[:k]:eps")->required();
  auto* round_point = round->add_option("--point", point, "Comma-separated coordinates");
  auto* round_csv = round->add_option("--csv", csv_path, "CSV file, one point per line ('-' for stdin)");
  round_point->excludes(round_csv);

  auto* member = app.add_subcommand("member", "Tile containing a point");
  member->add_option("--matrix", matrix)->required();
  member->add_option("--point", point)->required();

  auto* color_cmd = app.add_subcommand("color", "(d+1)-coloring of a tile of a reclusive partition");
  color_cmd->add_option("--matrix", matrix)->required();
  auto* color_m = color_cmd->add_option("--m", m_text, "Lattice coordinates of the tile");
  auto* color_point = color_cmd->add_option("--point", point, "A point inside the tile");
  color_m->excludes(color_point);

  auto* neigh = app.add_subcommand("neighborhood", "Tiles meeting a closed eps-ball");
  neigh->add_option("--matrix", matrix)->required();
  neigh->add_option("--point", point)->required();
  neigh->add_option("--eps", eps_text)->required();

  auto* clique = app.add_subcommand("clique", "Exact maximum clique of the partition graph");
  clique->add_option("--matrix", matrix)->required();
  clique->add_flag("--json", json, "Emit a JSON report");

  auto* verify = app.add_subcommand("verify", "Search for a point whose eps-ball meets more than k tiles");
  verify->add_option("--matrix", matrix)->required();
  verify->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  verify->add_option("--eps", eps_text)->required();
  verify->add_option("--trials", trials)->check(CLI::PositiveNumber);
  auto* verify_seed = verify->add_option("--seed", seed);

  auto* bounds = app.add_subcommand("bounds", "Tolerance upper bounds for diameter-D partitions");
  bounds->add_option("--d", bounds_d)->required()->check(CLI::PositiveNumber);
  bounds->add_option("--diameter", diameter, "Member diameter bound D (default 1)");

  auto* estimate = app.add_subcommand("estimate", "Pseudodeterministic estimation of d means");
  estimate->add_option("--oracle", oracle, "Oracle JSON file, or inline JSON")->required();
  estimate->add_option("--eps", eps_text)->required();
  estimate->add_option("--delta", delta_text)->required();
  auto* estimate_seed = estimate->add_option("--seed", seed);

  auto* render = app.add_subcommand("render", "SVG drawing of a 2-D partition");
  render->add_option("--matrix", matrix)->required();
  render->add_option("--window", window, "lo,hi for the square window [lo,hi]^2");
  render->add_flag("--color", colored, "Fill tiles with the (d+1)-coloring");
  auto* render_ball = render->add_option("--ball", ball, "Center of an eps-ball overlay");
  auto* render_eps = render->add_option("--eps", eps_text, "Radius of the overlay");
  render_ball->needs(render_eps);
  render_eps->needs(render_ball);
  render->add_option("--out", out_path, "Output file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  const Printer pr{decimals};
  try {
    if (*validate) {
      const MatrixSpec spec = parse_matrix_spec(matrix);
      const LatticePartition p = build_partition(spec);
      out << "matrix " << p.matrix().str() << "\n";
      try {
        const ReclusiveMatrix a = build_reclusive(spec);
        out << "reclusive d=" << a.dim() << "\n";
        out << "delta " << pr.scalar(a.delta()) << "\n";
        out << "tolerance " << pr.scalar(a.delta() / 2) << "\n";
      } catch (const ReclusiveViolation& v) {
        out << "not reclusive: " << to_string(v.clause()) << " at row " << v.row() << ", column " << v.col() << "\n";
        return kDomainError;
      }
      return kOk;
    }

    if (*round) {
      const SchemeSpec spec = parse_scheme_spec(scheme);
      if (round_point->count() > 0) {
        const QVector x = QVector::parse(point);
        out << pr.vec(make_rounding(spec, x.dim())(x)) << "\n";
        return kOk;
      }
      if (round_csv->count() == 0) throw UsageError("round needs --point or --csv");
      std::ifstream file;
      std::istream* in = &std::cin;
      if (csv_path != "-") {
        file.open(csv_path);
        if (!file) throw Error("cannot read CSV file '" + csv_path + "'");
        in = &file;
      }
      if (decimals >= 0) out << "# decimals [" << decimals << "dp]\n";
      std::optional<std::size_t> dim;
      RoundingFn f;
      std::string line;
      std::size_t line_no = 0;
      while (std::getline(*in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos || line.front() == '#') continue;
        QVector x(1);
        try {
          x = QVector::parse(line);
        } catch (const Error& e) {
          throw Error("line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!dim) {
          dim = x.dim();
          f = make_rounding(spec, x.dim());
        } else if (*dim != x.dim()) {
          throw Error("line " + std::to_string(line_no) + ": expected " + std::to_string(*dim) + " coordinates");
        }
        out << pr.csv(f(x)) << "\n";
      }
      return kOk;
    }

    if (*member) {
      const LatticePartition p = build_partition(parse_matrix_spec(matrix));
      const QVector x = QVector::parse(point);
      if (x.dim() != p.dim()) throw Error("point has " + std::to_string(x.dim()) + " coordinates, partition has d = " + std::to_string(p.dim()));
      const MemberId id = p.member_of(x);
      out << "m " << id.str() << "\n";
      out << "corner " << pr.vec(p.corner(id)) << "\n";
      return kOk;
    }

    if (*color_cmd) {
      const MatrixSpec spec = parse_matrix_spec(matrix);
      const ReclusiveMatrix a = build_reclusive(spec);
      IntVector m;
      if (color_m->count() > 0) {
        const QVector mv = QVector::parse(m_text);
        if (!mv.all_integer()) throw Error("--m must be an integer vector");
        m = mv.to_ints();
      } else if (color_point->count() > 0) {
        m = member_coords(a, QVector::parse(point));
      } else {
        throw UsageError("color needs --m or --point");
      }
      if (m.size() != a.dim()) throw Error("tile coordinates have the wrong dimension");
      out << "m " << MemberId{m}.str() << "\n";
      out << "color " << color(a, m) << "\n";
      return kOk;
    }

    if (*neigh) {
      const LatticePartition p = build_partition(parse_matrix_spec(matrix));
      const QVector x = QVector::parse(point);
      if (x.dim() != p.dim()) throw Error("point dimension does not match the partition");
      const Neighborhood n = p.neighborhood(x, positive(eps_text, "eps"));
      out << "members " << n.members.size() << "\n";
      print_members(out, p, n.members, pr);
      return kOk;
    }

    if (*clique) {
      const LatticePartition p = build_partition(parse_matrix_spec(matrix));
      const CliqueReport r = max_clique(p);
      out << (json ? r.to_json() + "\n" : r.to_text());
      return kOk;
    }

    if (*verify) {
      const LatticePartition p = build_partition(parse_matrix_spec(matrix));
      const Rational eps = positive(eps_text, "eps");
      if (verify_seed->count() == 0) seed = default_seed();
      VerifyStats stats;
      const auto ce = verify_secluded(p, k, eps, trials, seed, &stats);
      if (!ce) {
        out << "no counterexample\n";
        out << "checked " << stats.adversarial_points << " adversarial and " << stats.random_points
            << " random points, seed " << seed << "\n";
        return kOk;
      }
      out << "counterexample\n";
      out << "point " << pr.vec(ce->point) << "\n";
      out << "radius " << pr.scalar(ce->radius) << "\n";
      out << "members " << ce->members.size() << " > k = " << k << "\n";
      print_members(out, p, ce->members, pr);
      return kCounterexample;
    }

    if (*bounds) {
      out << tolerance_upper_bound(bounds_d, positive(diameter, "diameter")).to_text();
      return kOk;
    }

    if (*estimate) {
      std::string text = oracle;
      if (oracle.find('{') == std::string::npos) {
        std::ifstream in(oracle);
        if (!in) throw Error("cannot read oracle file '" + oracle + "'");
        text = slurp(in);
      }
      const SampleOracle o = oracle_from_json(text);
      if (estimate_seed->count() == 0) seed = default_seed();
      const EstimateResult r =
          estimate_means(o, positive(eps_text, "eps"), Rational::parse(delta_text), seed);
      out << "output " << pr.vec(r.output) << "\n";
      out << "sample_means " << pr.vec(r.sample_means) << "\n";
      out << "samples_per_function " << r.samples_used << "\n";
      out << "seed " << r.seed << "\n";
      return kOk;
    }

    if (*render) {
      const LatticePartition p = build_partition(parse_matrix_spec(matrix));
      RenderOptions opts;
      const QVector w = QVector::parse(window);
      if (w.dim() != 2) throw Error("--window takes lo,hi");
      opts.lo = w[0];
      opts.hi = w[1];
      opts.clique_color = colored;
      if (render_ball->count() > 0) opts.ball.emplace(QVector::parse(ball), positive(eps_text, "eps"));
      if (opts.ball && opts.ball->first.dim() != p.dim()) throw Error("--ball dimension does not match the partition");
      const std::string svg = render_svg(p, opts);
      if (out_path.empty()) {
        out << svg;
      } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw Error("cannot write '" + out_path + "'");
        f << svg;
        out << "wrote " << out_path << "\n";
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kDomainError;
  }
  return kUsageError;
}

}  // namespace secluded::cli
