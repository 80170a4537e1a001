#include <sstream>

#include "fullproj/ifs.hpp"

namespace fullproj {

std::string render_svg(const CellSet& cells, const SvgStyle& style) {
  if (cells.dim() != 2) throw Error("svg rendering is planar");
  const std::int64_t n = cells.n();
  std::ostringstream out;
  // Integer viewBox of n units keeps every cell edge exact.
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << n << ' ' << n
      << "\" width=\"512\" height=\"512\" shape-rendering=\"crispEdges\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << n << "\" height=\"" << n << "\" fill=\"" << style.background << "\"/>\n";
  out << "<g fill=\"" << style.fill << "\">\n";
  // Cells are sorted by (x, y), so vertical runs are adjacent.
  std::size_t i = 0;
  while (i < cells.size()) {
    const std::int64_t x = cells[i][0], y0 = cells[i][1];
    std::int64_t y1 = y0;
    std::size_t j = i + 1;
    while (style.merge_runs && j < cells.size() && cells[j][0] == x && cells[j][1] == y1 + 1) ++y1, ++j;
    out << "<rect x=\"" << x << "\" y=\"" << n - 1 - y1 << "\" width=\"1\" height=\"" << y1 - y0 + 1 << "\"/>\n";
    i = j;
  }
  out << "</g>\n";
  if (style.frame)
    out << "<rect x=\"0\" y=\"0\" width=\"" << n << "\" height=\"" << n
        << "\" fill=\"none\" stroke=\"#000\" stroke-width=\"" << static_cast<double>(n) / 200 << "\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace fullproj
