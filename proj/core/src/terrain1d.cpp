#include "tseek/terrain1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tseek/error.hpp"

namespace tseek {

namespace {

double gap_tolerance(double a, double b) {
  return kEpsGeom * std::max({1.0, std::abs(a), std::abs(b)});
}

// Vertex v lies strictly above the line through q and t (q.x != t.x).
bool strictly_above(Point2 q, Point2 t, Point2 v) {
  const Point2 d = q - t;
  const Point2 w = v - t;
  const double sigma = d.x > 0 ? 1.0 : -1.0;
  return sigma * cross(d, w) > kEpsGeom * norm(d) * norm(w);
}

}  // namespace

Terrain1D Terrain1D::from_vertices(std::vector<Point2> vertices, double start_x) {
  if (vertices.empty()) throw Error(ErrorCode::InvalidTerrain, "terrain needs at least one vertex");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!is_finite(vertices[i])) throw Error(ErrorCode::InvalidTerrain, "non-finite vertex");
    if (i > 0 && vertices[i].x - vertices[i - 1].x <= gap_tolerance(vertices[i].x, vertices[i - 1].x)) {
      throw Error(ErrorCode::InvalidTerrain, "vertex x-coordinates must be strictly increasing");
    }
  }
  Terrain1D raw(std::move(vertices));
  const double start_h = raw.height_at(start_x);

  std::vector<Point2> shifted;
  shifted.reserve(raw.vertices_.size() + 1);
  bool have_origin = false;
  for (const auto& v : raw.vertices_) {
    Point2 p{v.x - start_x, v.y - start_h};
    if (std::abs(p.x) <= gap_tolerance(p.x, 0.0)) {
      p = {0.0, 0.0};
      have_origin = true;
    }
    shifted.push_back(p);
  }
  if (!have_origin) {
    auto it = std::lower_bound(shifted.begin(), shifted.end(), 0.0,
                               [](const Point2& p, double x) { return p.x < x; });
    shifted.insert(it, Point2{0.0, 0.0});
  }
  return Terrain1D(std::move(shifted));
}

Terrain1D Terrain1D::flat(double extent) {
  return from_vertices({{-extent, 0.0}, {0.0, 0.0}, {extent, 0.0}});
}

double Terrain1D::height_at(double x) const {
  const auto& v = vertices_;
  if (x <= v.front().x) return v.front().y;
  if (x >= v.back().x) return v.back().y;
  auto it = std::upper_bound(v.begin(), v.end(), x, [](double xx, const Point2& p) { return xx < p.x; });
  const Point2 b = *it;
  const Point2 a = *(it - 1);
  const double u = (x - a.x) / (b.x - a.x);
  return a.y + u * (b.y - a.y);
}

double Terrain1D::forward_slope(double x, int dir) const {
  const auto& v = vertices_;
  const double tol = gap_tolerance(x, 0.0);
  if (dir > 0) {
    // First vertex strictly right of x (beyond tolerance).
    auto it = std::upper_bound(v.begin(), v.end(), x + tol, [](double xx, const Point2& p) { return xx < p.x; });
    if (it == v.end() || it == v.begin()) return 0.0;
    const Point2 b = *it;
    const Point2 a = *(it - 1);
    return (b.y - a.y) / (b.x - a.x);
  }
  auto it = std::lower_bound(v.begin(), v.end(), x - tol, [](const Point2& p, double xx) { return p.x < xx; });
  if (it == v.begin() || it == v.end()) return 0.0;
  const Point2 b = *it;
  const Point2 a = *(it - 1);
  return -(b.y - a.y) / (b.x - a.x);
}

std::span<const Point2> Terrain1D::vertices_between(double lo, double hi) const {
  if (!(lo < hi)) return {};
  auto first = std::upper_bound(vertices_.begin(), vertices_.end(), lo,
                                [](double x, const Point2& p) { return x < p.x; });
  auto last = std::lower_bound(vertices_.begin(), vertices_.end(), hi,
                               [](const Point2& p, double x) { return p.x < x; });
  if (first >= last) return {};
  return {first, last};
}

std::vector<Point2> Terrain1D::peaks() const {
  std::vector<Point2> out;
  const auto& v = vertices_;
  const std::size_t n = v.size();
  std::size_t i = 0;
  while (i < n) {
    // Maximal run of equal heights [i, j].
    std::size_t j = i;
    while (j + 1 < n && v[j + 1].y == v[i].y) ++j;
    const bool left_lower = i > 0 && v[i - 1].y < v[i].y;
    const bool right_lower = j + 1 < n && v[j + 1].y < v[j].y;
    if (left_lower && right_lower) {
      out.push_back(v[i]);
      if (j != i) out.push_back(v[j]);
    }
    i = j + 1;
  }
  return out;
}

std::vector<Point2> Terrain1D::convex_vertices() const {
  std::vector<Point2> out;
  const auto& v = vertices_;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double left = i == 0 ? 0.0 : (v[i].y - v[i - 1].y) / (v[i].x - v[i - 1].x);
    const double right = i + 1 == v.size() ? 0.0 : (v[i + 1].y - v[i].y) / (v[i + 1].x - v[i].x);
    if (left > right + kEpsGeom * std::max(1.0, std::abs(left) + std::abs(right))) out.push_back(v[i]);
  }
  return out;
}

double Terrain1D::min_height() const {
  return std::min_element(vertices_.begin(), vertices_.end(),
                          [](const Point2& a, const Point2& b) { return a.y < b.y; })
      ->y;
}

double Terrain1D::max_height() const {
  return std::max_element(vertices_.begin(), vertices_.end(),
                          [](const Point2& a, const Point2& b) { return a.y < b.y; })
      ->y;
}

double Terrain1D::height_tolerance(Point2 p) const {
  return kEpsGeom * std::max({1.0, std::abs(p.x), std::abs(p.y)});
}

bool Terrain1D::segment_clear(Point2 a, Point2 b) const {
  if (!is_above(a) || !is_above(b)) return false;
  if (a.x == b.x) return true;
  for (const auto& v : vertices_between(std::min(a.x, b.x), std::max(a.x, b.x))) {
    if (strictly_above(a, b, v)) return false;
  }
  return true;
}

bool sees(const Terrain1D& terrain, Point2 q, Point2 t) {
  if (!terrain.is_above(q) || !terrain.is_above(t)) {
    throw Error(ErrorCode::PointBelowTerrain, "visibility endpoints must be on or above the terrain");
  }
  return terrain.segment_clear(q, t);
}

std::optional<double> first_visible_param(const Terrain1D& terrain, Point2 a, Point2 b, Point2 t) {
  auto point_at = [&](double u) { return lerp(a, b, u); };
  auto sees_at = [&](double u) {
    const Point2 q = point_at(u);
    return q.x == t.x || terrain.segment_clear(q, t);
  };

  // Breakpoints where the set of in-between vertices changes.
  std::vector<double> breaks{0.0, 1.0};
  const double dx = b.x - a.x;
  if (dx != 0.0) {
    const double lo = std::min(a.x, b.x);
    const double hi = std::max(a.x, b.x);
    for (const auto& v : terrain.vertices_between(lo, hi)) breaks.push_back((v.x - a.x) / dx);
    if (t.x > lo && t.x < hi) breaks.push_back((t.x - a.x) / dx);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  for (std::size_t k = 0; k < breaks.size(); ++k) {
    const double u0 = breaks[k];
    if (sees_at(u0)) return u0;
    if (k + 1 == breaks.size()) break;
    const double u1 = breaks[k + 1];
    const Point2 mid = point_at(0.5 * (u0 + u1));
    if (mid.x == t.x) return u0;  // vertical piece through t's column
    const double sigma = mid.x > t.x ? 1.0 : -1.0;

    double lo = u0;
    double hi = u1;
    for (const auto& v : terrain.vertices_between(std::min(mid.x, t.x), std::max(mid.x, t.x))) {
      const Point2 w = v - t;
      const double g0 = sigma * cross(a - t, w);
      const double g1 = sigma * cross(b - a, w);
      const double tol = 0.0;  // exact touching boundary; segment_clear re-checks with tolerance
      if (g1 > 0) {
        hi = std::min(hi, (tol - g0) / g1);
      } else if (g1 < 0) {
        lo = std::max(lo, (tol - g0) / g1);
      } else if (g0 > tol) {
        lo = hi + 1.0;
      }
      if (lo > hi) break;
    }
    if (lo <= hi) {
      // Guard against the linear bound landing exactly on a blocked boundary.
      if (sees_at(lo)) return lo;
      const double nudged = std::min(hi, lo + 1e-12);
      if (sees_at(nudged)) return nudged;
    }
  }
  return std::nullopt;
}

}  // namespace tseek
