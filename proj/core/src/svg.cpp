#include <algorithm>
#include <cstdio>
#include <sstream>

#include "kvis/io.hpp"

namespace kvis {

namespace {

struct Frame {
  double min_x, max_y, scale, pad;

  double x(double v) const { return pad + (v - min_x) * scale; }
  double y(double v) const { return pad + (max_y - v) * scale; }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string path_of(const Ring& r, const Frame& f) {
  std::string d;
  for (std::size_t i = 0; i < r.size(); ++i) {
    d += (i == 0 ? "M" : " L") + num(f.x(r[i].fx())) + "," + num(f.y(r[i].fy()));
  }
  return d + " Z";
}

}  // namespace

std::string render_svg(const PolygonWithHoles& poly, const SvgLayers& layers) {
  const BoundingBox b = bounding_box(poly.outer);
  const double span = std::max({b.max_x - b.min_x, b.max_y - b.min_y, 1e-12});
  const double size = 800.0;
  const Frame f{b.min_x, b.max_y, size / span, 20.0};
  const double w = (b.max_x - b.min_x) * f.scale + 2 * f.pad;
  const double h = (b.max_y - b.min_y) * f.scale + 2 * f.pad;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(w) << "\" height=\"" << num(h)
      << "\" viewBox=\"0 0 " << num(w) << " " << num(h) << "\">\n";
  std::string d = path_of(poly.outer, f);
  for (const Ring& r : poly.holes) d += " " + path_of(r, f);
  out << "  <path class=\"polygon\" d=\"" << d
      << "\" fill=\"#f4f4f4\" fill-rule=\"evenodd\" stroke=\"black\" stroke-width=\"2\"/>\n";
  if (layers.decomposition != nullptr) {
    for (const Diagonal& diag : layers.decomposition->diagonals) {
      out << "  <line class=\"diagonal\" x1=\"" << num(f.x(diag.segment.a.fx())) << "\" y1=\""
          << num(f.y(diag.segment.a.fy())) << "\" x2=\"" << num(f.x(diag.segment.b.fx())) << "\" y2=\""
          << num(f.y(diag.segment.b.fy())) << "\" stroke=\"#555\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";
    }
  }
  if (layers.trace != nullptr) {
    for (const TraceStep& s : layers.trace->steps) {
      for (const SweepRecord& r : s.sweeps) {
        if (!r.used) continue;
        const Segment& e = r.host.segment;
        const double ax = e.a.fx(), ay = e.a.fy(), ex = e.b.fx() - ax, ey = e.b.fy() - ay;
        const double t0 = r.result.feasible.t_lo, t1 = r.result.feasible.t_hi;
        out << "  <line class=\"feasible\" x1=\"" << num(f.x(ax + t0 * ex)) << "\" y1=\"" << num(f.y(ay + t0 * ey))
            << "\" x2=\"" << num(f.x(ax + t1 * ex)) << "\" y2=\"" << num(f.y(ay + t1 * ey))
            << "\" stroke=\"orange\" stroke-width=\"6\" stroke-opacity=\"0.7\"/>\n";
      }
    }
  }
  if (layers.guards != nullptr) {
    int i = 0;
    for (const Guard& g : layers.guards->guards) {
      const char* color = g.role == GuardRole::kHoleEdge ? "#1f77b4" : g.role == GuardRole::kRelocated ? "#2ca02c" : "#d62728";
      const double x = f.x(g.position.fx()), y = f.y(g.position.fy());
      out << "  <circle class=\"guard\" cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"5\" fill=\"" << color
          << "\"/>\n";
      out << "  <text x=\"" << num(x + 6) << "\" y=\"" << num(y - 6) << "\" font-size=\"12\" font-family=\"sans-serif\">g"
          << i++ << "</text>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace kvis
