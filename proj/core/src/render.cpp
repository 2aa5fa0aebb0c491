#include "tmdyn/render.hpp"

#include <cstdio>
#include <sstream>

namespace tmdyn {

namespace {

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void check_row(const NdaMachine& nda, const MacroRow& row) {
  const auto where = "trajectory step " + std::to_string(row.step) + ": ";
  if (row.cell < -1 || row.cell >= static_cast<long>(nda.branches().size())) {
    throw TrajectoryMismatchError(where + "cell " + std::to_string(row.cell) + " does not exist in the artifact (" +
                                  std::to_string(nda.branches().size()) + " cells)");
  }
  std::optional<std::size_t> located;
  try {
    located = nda.locate(row.rect);
  } catch (const PartitionConsistencyError& e) {
    throw TrajectoryMismatchError(where + e.what());
  }
  const long expected = located ? static_cast<long>(*located) : -1;
  if (expected != row.cell) {
    throw TrajectoryMismatchError(where + "rectangle " + row.rect.str() + " lies in cell " +
                                  std::to_string(expected) + " but the trajectory names cell " +
                                  std::to_string(row.cell));
  }
}

}  // namespace

std::string render_svg(const NdaMachine& nda, const std::vector<MacroRow>& trajectory, const RenderOptions& options) {
  for (const auto& row : trajectory) check_row(nda, row);

  const double side = options.size;
  const double m = options.margin;
  const auto px = [&](const Rational& x) { return fixed(m + side * x.to_double()); };
  const auto py = [&](const Rational& y) { return fixed(m + side * (1.0 - y.to_double())); };
  const auto width = [&](const Interval& iv) { return fixed(side * iv.length().to_double()); };

  std::ostringstream out;
  const auto total = std::to_string(options.size + 2 * options.margin);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << total << "\" height=\"" << total
      << "\" viewBox=\"0 0 " << total << ' ' << total << "\">\n";
  out << "<rect x=\"" << fixed(m) << "\" y=\"" << fixed(m) << "\" width=\"" << fixed(side) << "\" height=\""
      << fixed(side) << "\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n";

  out << "<g id=\"cells\" fill=\"none\" stroke=\"#1f3a93\" stroke-width=\"1\">\n";
  for (std::size_t i = 0; i < nda.branches().size(); ++i) {
    const auto& r = nda.branches()[i].cell.rect;
    out << "<rect class=\"cell\" data-index=\"" << i << "\" x=\"" << px(r.ix().lo()) << "\" y=\"" << py(r.iy().hi())
        << "\" width=\"" << width(r.ix()) << "\" height=\"" << width(r.iy()) << "\"/>\n";
  }
  out << "</g>\n";

  out << "<g id=\"labels\" font-family=\"monospace\" font-size=\"11\" fill=\"#1f3a93\">\n";
  for (const auto& b : nda.branches()) {
    const auto& r = b.cell.rect;
    out << "<text x=\"" << fixed(m + side * r.ix().lo().to_double() + 2) << "\" y=\""
        << fixed(m + side * (1.0 - r.iy().hi().to_double()) + 12) << "\">"
        << escape(format_cell_index(nda.coding(), b.cell.index)) << "</text>\n";
  }
  out << "</g>\n";

  out << "<g id=\"trajectory\" fill=\"#d35400\" fill-opacity=\"0.35\" stroke=\"#d35400\" stroke-width=\"1\">\n";
  for (const auto& row : trajectory) {
    const auto& r = row.rect;
    out << "<rect class=\"step\" data-step=\"" << row.step << "\" x=\"" << px(r.ix().lo()) << "\" y=\""
        << py(r.iy().hi()) << "\" width=\"" << width(r.ix()) << "\" height=\"" << width(r.iy()) << "\"/>\n";
  }
  out << "</g>\n";
  out << "<g id=\"steps\" font-family=\"monospace\" font-size=\"10\" fill=\"#7b2d00\">\n";
  for (const auto& row : trajectory) {
    const auto& r = row.rect;
    const double cx = m + side * (r.ix().lo().to_double() + r.ix().hi().to_double()) / 2.0;
    const double cy = m + side * (1.0 - (r.iy().lo().to_double() + r.iy().hi().to_double()) / 2.0);
    out << "<text x=\"" << fixed(cx) << "\" y=\"" << fixed(cy) << "\" text-anchor=\"middle\">t=" << row.step
        << "</text>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace tmdyn
