#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "secluded/cli.hpp"
#include "secluded/error.hpp"

namespace secluded::cli {

namespace {

struct Field {
  std::string_view text;
  std::size_t pos;  // 0-based offset in the whole spec
};

std::vector<Field> split_colon(std::string_view s) {
  std::vector<Field> out;
  std::size_t start = 0;
  while (true) {
    const auto c = s.find(':', start);
    out.push_back({s.substr(start, c == std::string_view::npos ? std::string_view::npos : c - start), start});
    if (c == std::string_view::npos) break;
    start = c + 1;
  }
  return out;
}

std::int64_t parse_count(const Field& f, std::string_view whole, std::int64_t min_value) {
  std::int64_t v = 0;
  const auto* end = f.text.data() + f.text.size();
  const auto [ptr, ec] = std::from_chars(f.text.data(), end, v);
  if (f.text.empty() || ec != std::errc() || ptr != end || v < min_value) {
    throw Error("malformed integer '" + std::string(f.text) + "' at position " + std::to_string(f.pos) + " of '" +
                std::string(whole) + "'");
  }
  return v;
}

Rational parse_field_rational(const Field& f, std::string_view whole) {
  try {
    return Rational::parse(f.text);
  } catch (const Error&) {
    throw Error("malformed number '" + std::string(f.text) + "' at position " + std::to_string(f.pos) + " of '" +
                std::string(whole) + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read matrix file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Dimensions are capped to keep exhaustive routines within reach.
constexpr std::int64_t kMaxDim = 64;

}  // namespace

MatrixSpec parse_matrix_spec(std::string_view s) {
  MatrixSpec spec;
  spec.raw = std::string(s);
  const auto fields = split_colon(s);
  const std::string_view head = fields.front().text;
  const bool builtin = head == "canonical" || head == "grid" || head == "bprime" || head == "bdoubleprime";
  if (!builtin) {
    if (fields.size() > 1 && s.find('/') == std::string_view::npos && s.find('.') == std::string_view::npos) {
      throw Error("unknown matrix family '" + std::string(head) + "' at position 0 of '" + std::string(s) + "'");
    }
    if (s.empty()) throw Error("empty matrix spec");
    spec.kind = "file";
    spec.path = std::string(s);
    return spec;
  }
  spec.kind = std::string(head);
  const std::size_t max_fields = head == "canonical" ? 3 : 2;
  if (fields.size() < 2 || fields.size() > max_fields) {
    throw Error("'" + std::string(s) + "': expected " + std::string(head) +
                (head == "canonical" ? ":d[:k]" : ":d"));
  }
  const std::int64_t d = parse_count(fields[1], s, 1);
  if (d > kMaxDim) throw Error("dimension " + std::to_string(d) + " exceeds the limit " + std::to_string(kMaxDim));
  spec.d = static_cast<std::size_t>(d);
  spec.k = d;
  if (fields.size() == 3) {
    spec.k = parse_count(fields[2], s, 1);
    if (spec.k < d) {
      throw Error("canonical matrix needs k >= d, got k = " + std::to_string(spec.k) + " < d = " +
                  std::to_string(d) + " at position " + std::to_string(fields[2].pos));
    }
  }
  return spec;
}

QMatrix parse_matrix_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("invalid matrix JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("entries") || !j.at("entries").is_array()) {
    throw Error("matrix JSON needs an \"entries\" array of rows");
  }
  const auto& rows = j.at("entries");
  std::vector<std::vector<Rational>> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array()) throw Error("matrix JSON row " + std::to_string(i + 1) + " is not an array");
    std::vector<Rational> row;
    for (const auto& e : rows[i]) {
      if (e.is_string()) {
        row.push_back(Rational::parse(e.get<std::string>()));
      } else if (e.is_number()) {
        row.push_back(Rational::parse(e.dump()));
      } else {
        throw Error("matrix JSON row " + std::to_string(i + 1) + " holds a non-numeric entry");
      }
    }
    out.push_back(std::move(row));
  }
  if (out.empty()) throw Error("matrix JSON has no rows");
  if (j.contains("d") && (!j.at("d").is_number_integer() || j.at("d").get<std::int64_t>() !=
                                                                 static_cast<std::int64_t>(out.size()))) {
    throw Error("matrix JSON field \"d\" does not match the number of rows");
  }
  return QMatrix(out);
}

LatticePartition build_partition(const MatrixSpec& spec) {
  if (spec.kind == "canonical") return canonical_partition(spec.d, spec.k);
  if (spec.kind == "grid") return grid(spec.d);
  if (spec.kind == "bprime") return b_prime(spec.d);
  if (spec.kind == "bdoubleprime") return b_double_prime(spec.d);
  return LatticePartition::from_matrix(parse_matrix_json(read_file(spec.path)), spec.path);
}

ReclusiveMatrix build_reclusive(const MatrixSpec& spec) {
  if (spec.kind == "canonical") return canonical_reclusive(spec.d, spec.k);
  return validate_reclusive(build_partition(spec).matrix());
}

SchemeSpec parse_scheme_spec(std::string_view s) {
  const auto fields = split_colon(s);
  const std::string_view head = fields.front().text;
  if (head == "floor") {
    if (fields.size() < 2 || fields.size() > 4) throw Error("'" + std::string(s) + "': expected floor:alpha[:beta[:gamma]]");
    FloorSpec f{parse_field_rational(fields[1], s), Rational(0), Rational(0)};
    if (f.alpha.sign() <= 0) throw Error("floor scheme width alpha must be positive, got " + f.alpha.str());
    if (fields.size() > 2) f.beta = parse_field_rational(fields[2], s);
    if (fields.size() > 3) f.gamma = parse_field_rational(fields[3], s);
    return f;
  }
  if (head == "hk") {
    if (fields.size() != 3) throw Error("'" + std::string(s) + "': expected hk:d:eps");
    HKSpec h{static_cast<std::size_t>(parse_count(fields[1], s, 1)), parse_field_rational(fields[2], s)};
    if (h.eps.sign() <= 0) throw Error("hk scheme eps must be positive, got " + h.eps.str());
    return h;
  }
  if (head == "reclusive") {
    if (fields.size() != 3 && fields.size() != 4) throw Error("'" + std::string(s) + "': expected reclusive:d[:k]:eps");
    ReclusiveSpec r{static_cast<std::size_t>(parse_count(fields[1], s, 1)), 0, parse_field_rational(fields.back(), s)};
    r.k = fields.size() == 4 ? parse_count(fields[2], s, 1) : static_cast<std::int64_t>(r.d);
    if (r.k < static_cast<std::int64_t>(r.d)) throw Error("canonical matrix needs k >= d");
    if (r.eps.sign() <= 0) throw Error("reclusive rounding eps must be positive, got " + r.eps.str());
    return r;
  }
  throw Error("unknown scheme '" + std::string(head) + "' at position 0 of '" + std::string(s) + "'");
}

RoundingFn make_rounding(const SchemeSpec& spec, std::size_t d) {
  auto check = [d](std::size_t want) {
    if (want != d) {
      throw Error("scheme is for dimension " + std::to_string(want) + " but the point has " + std::to_string(d) +
                  " coordinates");
    }
  };
  if (const auto* f = std::get_if<FloorSpec>(&spec)) {
    return as_rounding_fn(FloorScheme(f->alpha, QVector::filled(d, f->beta), QVector::filled(d, f->gamma)));
  }
  if (const auto* h = std::get_if<HKSpec>(&spec)) {
    check(h->d);
    return as_rounding_fn(HKScheme(h->d, h->eps));
  }
  const auto& r = std::get<ReclusiveSpec>(spec);
  check(r.d);
  return as_rounding_fn(ReclusiveRounder(canonical_reclusive(r.d, r.k), r.eps));
}

}  // namespace secluded::cli
