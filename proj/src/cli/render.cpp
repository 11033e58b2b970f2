#include <algorithm>
#include <array>
#include <sstream>

#include "secluded/cli.hpp"
#include "secluded/error.hpp"

namespace secluded::cli {

namespace {

constexpr long kPixelsPerUnit = 60;
constexpr int kDigits = 3;
constexpr std::array<const char*, 3> kPalette = {"#8fb8de", "#f2c57c", "#9dd3a8"};

std::string num(const Rational& v) { return v.to_decimal(kDigits); }

}  // namespace

std::string render_svg(const LatticePartition& p, const RenderOptions& opts) {
  if (p.dim() != 2) throw Error("render needs a 2-dimensional partition, got d = " + std::to_string(p.dim()));
  if (!(opts.lo < opts.hi)) throw Error("render window needs lo < hi");
  std::optional<ReclusiveMatrix> rec;
  if (opts.clique_color) rec = validate_reclusive(p.matrix());

  const Rational scale(kPixelsPerUnit);
  const Rational side = (opts.hi - opts.lo) * scale;
  auto sx = [&](const Rational& x) { return num((x - opts.lo) * scale); };
  auto sy = [&](const Rational& y) { return num((opts.hi - y) * scale); };

  const QVector lo = QVector::filled(2, opts.lo), hi = QVector::filled(2, opts.hi);
  const std::vector<MemberId> tiles = p.members_meeting_box(lo, hi);
  std::vector<MemberId> touched;
  if (opts.ball) touched = p.neighborhood(opts.ball->first, opts.ball->second).members;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(side) << "\" height=\""
      << num(side) << "\" viewBox=\"0 0 " << num(side) << ' ' << num(side) << "\">\n";
  out << "<desc>partition " << p.tag() << " window [" << opts.lo.str() << ", " << opts.hi.str() << "]^2 tiles "
      << tiles.size();
  if (opts.ball) out << " ball " << opts.ball->first.str() << " eps " << opts.ball->second.str() << " touched " << touched.size();
  out << "</desc>\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << num(side) << "\" height=\"" << num(side) << "\" fill=\"#ffffff\"/>\n";

  for (const auto& id : tiles) {
    const QVector c = p.corner(id);
    const bool hit = std::binary_search(touched.begin(), touched.end(), id);
    std::string fill = "none";
    if (rec) fill = kPalette[static_cast<std::size_t>(color(*rec, id.m))];
    out << "<rect x=\"" << sx(c[0]) << "\" y=\"" << sy(c[1] + 1) << "\" width=\"" << kPixelsPerUnit
        << "\" height=\"" << kPixelsPerUnit << "\" fill=\"" << fill << "\" stroke=\"" << (hit ? "#b00000" : "#333333")
        << "\" stroke-width=\"" << (hit ? 3 : 1) << "\"><title>" << id.str() << (hit ? " touched" : "")
        << "</title></rect>\n";
  }
  if (opts.ball) {
    const auto& [center, eps] = *opts.ball;
    out << "<rect x=\"" << sx(center[0] - eps) << "\" y=\"" << sy(center[1] + eps) << "\" width=\""
        << num(2 * eps * scale) << "\" height=\"" << num(2 * eps * scale)
        << "\" fill=\"#e03030\" fill-opacity=\"0.45\" stroke=\"none\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace secluded::cli
