#include "tseek/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "tseek/error.hpp"

namespace tseek {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
  return buf;
}

struct Box {
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
  double x1 = -x0, y1 = -x0;
  void add(Point2 p) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  bool empty() const { return !(x0 <= x1); }
  void pad() {
    if (empty()) *this = Box{-1.0, -1.0, 1.0, 1.0};
    const double w = std::max(x1 - x0, 1e-9), h = std::max(y1 - y0, 1e-9);
    const double side = std::max(w, h);
    // Keep degenerate extents visible.
    if (w < 1e-3 * side) { x0 -= 0.05 * side; x1 += 0.05 * side; }
    if (h < 1e-3 * side) { y0 -= 0.05 * side; y1 += 0.05 * side; }
    const double mx = 0.05 * (x1 - x0), my = 0.05 * (y1 - y0);
    x0 -= mx; x1 += mx; y0 -= my; y1 += my;
  }
};

const char* color(SvgRole role) {
  switch (role) {
    case SvgRole::Guide: return "#1f5fbf";
    case SvgRole::Path: return "#c0392b";
    case SvgRole::Geodesic: return "#1e8449";
  }
  return "#000";
}

std::string polyline(const std::vector<Point2>& pts, SvgRole role) {
  std::ostringstream o;
  o << "<polyline fill=\"none\" stroke=\"" << color(role) << "\" stroke-width=\"1.5\"";
  if (role == SvgRole::Guide) o << " stroke-dasharray=\"6 4\"";
  o << " vector-effect=\"non-scaling-stroke\" points=\"";
  for (std::size_t k = 0; k < pts.size(); ++k) o << (k ? " " : "") << num(pts[k].x) << ',' << num(-pts[k].y);
  o << "\"/>\n";
  return o.str();
}

std::string header(const Box& b, const std::string& title) {
  const double w = b.x1 - b.x0, h = b.y1 - b.y0;
  const double px = 800.0;
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(b.x0) << ' ' << num(-b.y1) << ' ' << num(w)
    << ' ' << num(h) << "\" width=\"" << num(px) << "\" height=\"" << num(std::max(1.0, std::round(px * h / w)))
    << "\">\n";
  if (!title.empty()) o << "<title>" << title << "</title>\n";
  return o.str();
}

std::string side_view(const SvgScene& sc) {
  Box content;
  for (const auto& [role, line] : sc.lines2) {
    for (const auto& p : line.vertices()) content.add(p);
  }
  for (const auto& r : sc.rays) content.add(r.anchor());
  for (const auto& m : sc.markers) content.add(m);
  if (sc.terrain1d) {
    const bool only_terrain = content.empty();
    const double lo = content.x0, hi = content.x1;
    for (const auto& v : sc.terrain1d->vertices()) {
      if (only_terrain || (v.x >= lo && v.x <= hi)) content.add(v);
    }
    if (!only_terrain) {
      content.add({lo, sc.terrain1d->height_at(lo)});
      content.add({hi, sc.terrain1d->height_at(hi)});
    }
  }
  content.pad();
  const Box& b = content;
  std::ostringstream o;
  o << header(b, sc.title);
  if (sc.terrain1d) {
    const auto& t = *sc.terrain1d;
    o << "<polygon fill=\"#d9c7a7\" stroke=\"#6e5a3a\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\" points=\"";
    o << num(b.x0) << ',' << num(-b.y0) << ' ' << num(b.x0) << ',' << num(-t.height_at(b.x0));
    for (const auto& v : t.vertices()) {
      if (v.x > b.x0 && v.x < b.x1) o << ' ' << num(v.x) << ',' << num(-v.y);
    }
    o << ' ' << num(b.x1) << ',' << num(-t.height_at(b.x1)) << ' ' << num(b.x1) << ',' << num(-b.y0) << "\"/>\n";
  }
  for (const auto& [role, line] : sc.lines2) o << polyline(line.vertices(), role);
  const double reach = 4.0 * std::hypot(b.x1 - b.x0, b.y1 - b.y0);
  for (const auto& r : sc.rays) {
    const Point2 e = r.at(reach);
    o << "<line stroke=\"#7d3c98\" stroke-width=\"1.5\" vector-effect=\"non-scaling-stroke\" x1=\"" << num(r.anchor().x)
      << "\" y1=\"" << num(-r.anchor().y) << "\" x2=\"" << num(e.x) << "\" y2=\"" << num(-e.y) << "\"/>\n";
  }
  const double rad = 0.006 * std::max(b.x1 - b.x0, b.y1 - b.y0);
  for (const auto& m : sc.markers) {
    o << "<circle fill=\"#000\" r=\"" << num(rad) << "\" cx=\"" << num(m.x) << "\" cy=\"" << num(-m.y) << "\"/>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string top_view(const SvgScene& sc) {
  Box content;
  for (const auto& [role, line] : sc.lines3) {
    for (const auto& p : line.vertices()) content.add({p.x, p.y});
  }
  for (const auto& m : sc.markers) content.add(m);
  const Terrain25D* t = sc.terrain25d;
  if (t && content.empty()) {
    content.add(t->origin());
    content.add(t->node_position(t->cols() - 1, t->rows() - 1));
  }
  content.pad();
  const Box& b = content;
  std::ostringstream o;
  o << header(b, sc.title);
  if (t) {
    const double sp = t->spacing();
    const double span = std::max(t->max_height() - t->min_height(), 1e-12);
    for (std::size_t r = 0; r < t->rows(); ++r) {
      for (std::size_t c = 0; c < t->cols(); ++c) {
        const Point2 p = t->node_position(c, r);
        if (p.x + sp / 2 < b.x0 || p.x - sp / 2 > b.x1 || p.y + sp / 2 < b.y0 || p.y - sp / 2 > b.y1) continue;
        const int g = static_cast<int>(std::lround(235.0 - 150.0 * (t->node(c, r) - t->min_height()) / span));
        char fill[16];
        std::snprintf(fill, sizeof fill, "#%02x%02x%02x", g, g, g);
        o << "<rect fill=\"" << fill << "\" x=\"" << num(p.x - sp / 2) << "\" y=\"" << num(-p.y - sp / 2)
          << "\" width=\"" << num(sp) << "\" height=\"" << num(sp) << "\"/>\n";
      }
    }
  }
  for (const auto& [role, line] : sc.lines3) {
    std::vector<Point2> pts;
    for (const auto& p : line.vertices()) {
      if (pts.empty() || pts.back().x != p.x || pts.back().y != p.y) pts.push_back({p.x, p.y});
    }
    o << polyline(pts, role);
  }
  const double rad = 0.006 * std::max(b.x1 - b.x0, b.y1 - b.y0);
  for (const auto& m : sc.markers) {
    o << "<circle fill=\"#000\" r=\"" << num(rad) << "\" cx=\"" << num(m.x) << "\" cy=\"" << num(-m.y) << "\"/>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace

std::string export_svg(const SvgScene& scene) {
  const bool flat = scene.terrain1d || !scene.lines2.empty() || !scene.rays.empty();
  const bool raised = scene.terrain25d || !scene.lines3.empty();
  if (flat && raised) throw Error(ErrorCode::MixedDimensionality, "cannot mix 1.5D and 2.5D content in one SVG");
  return raised ? top_view(scene) : side_view(scene);
}

}  // namespace tseek
