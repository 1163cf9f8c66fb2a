#include "tseek/terrain25d.hpp"

#include <algorithm>
#include <cmath>

#include "tseek/error.hpp"

namespace tseek {

Terrain25D::Terrain25D(std::vector<double> heights, std::size_t cols, std::size_t rows, double spacing,
                       Point2 origin)
    : heights_(std::move(heights)), cols_(cols), rows_(rows), spacing_(spacing), origin_(origin) {}

Terrain25D Terrain25D::from_raster(std::vector<double> heights, std::size_t cols, std::size_t rows,
                                   double spacing, Point2 origin) {
  if (cols < 2 || rows < 2) throw Error(ErrorCode::InvalidTerrain, "raster must be at least 2x2");
  if (heights.size() != cols * rows) throw Error(ErrorCode::InvalidTerrain, "raster size does not match dimensions");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw Error(ErrorCode::InvalidTerrain, "spacing must be positive");
  if (!is_finite(origin)) throw Error(ErrorCode::InvalidTerrain, "origin must be finite");
  for (double h : heights) {
    if (!std::isfinite(h)) throw Error(ErrorCode::InvalidTerrain, "raster heights must be finite");
  }
  Terrain25D t(std::move(heights), cols, rows, spacing, origin);
  const double h0 = t.height_at(0.0, 0.0);
  const double scale = std::max(1.0, std::max(std::abs(*std::max_element(t.heights_.begin(), t.heights_.end())),
                                               std::abs(*std::min_element(t.heights_.begin(), t.heights_.end()))));
  // Already normalized rasters are left untouched so that files round-trip.
  if (std::abs(h0) > 1e-12 * scale) {
    for (double& h : t.heights_) h -= h0;
  }
  const auto [mn, mx] = std::minmax_element(t.heights_.begin(), t.heights_.end());
  t.min_height_ = *mn;
  t.max_height_ = *mx;

  double lip = 0.0;
  for (std::size_t r = 0; r + 1 < rows; ++r) {
    for (std::size_t c = 0; c + 1 < cols; ++c) {
      const double h00 = t.node(c, r), h10 = t.node(c + 1, r);
      const double h01 = t.node(c, r + 1), h11 = t.node(c + 1, r + 1);
      // d/dx varies with y only and d/dy with x only: corners suffice.
      for (int fv = 0; fv <= 1; ++fv) {
        for (int fu = 0; fu <= 1; ++fu) {
          const double gx = (fv ? h11 - h01 : h10 - h00) / spacing;
          const double gy = (fu ? h11 - h10 : h01 - h00) / spacing;
          lip = std::max(lip, std::hypot(gx, gy));
        }
      }
    }
  }
  t.lipschitz_ = lip;
  return t;
}

Terrain25D Terrain25D::flat(double half_extent, double spacing) {
  const auto n = static_cast<std::size_t>(std::ceil(2.0 * half_extent / spacing)) + 1;
  const double start = -0.5 * static_cast<double>(n - 1) * spacing;
  return from_raster(std::vector<double>(n * n, 0.0), n, n, spacing, {start, start});
}

Point2 Terrain25D::node_position(std::size_t c, std::size_t r) const {
  return {origin_.x + static_cast<double>(c) * spacing_, origin_.y + static_cast<double>(r) * spacing_};
}

void Terrain25D::locate(double world, double origin, std::size_t n, std::size_t& cell, double& frac) const {
  double u = (world - origin) / spacing_;
  u = std::clamp(u, 0.0, static_cast<double>(n - 1));
  cell = std::min(static_cast<std::size_t>(u), n - 2);
  frac = u - static_cast<double>(cell);
}

double Terrain25D::height_at(double x, double y) const {
  std::size_t c, r;
  double fu, fv;
  locate(x, origin_.x, cols_, c, fu);
  locate(y, origin_.y, rows_, r, fv);
  const double h00 = node(c, r), h10 = node(c + 1, r);
  const double h01 = node(c, r + 1), h11 = node(c + 1, r + 1);
  return (1.0 - fv) * ((1.0 - fu) * h00 + fu * h10) + fv * ((1.0 - fu) * h01 + fu * h11);
}

double Terrain25D::min_height_in_rect(const Rect& rect) const {
  // Clamping maps the rectangle onto its intersection with the raster box.
  const double bx1 = origin_.x + static_cast<double>(cols_ - 1) * spacing_;
  const double by1 = origin_.y + static_cast<double>(rows_ - 1) * spacing_;
  const double x0 = std::clamp(std::min(rect.x0, rect.x1), origin_.x, bx1);
  const double x1 = std::clamp(std::max(rect.x0, rect.x1), origin_.x, bx1);
  const double y0 = std::clamp(std::min(rect.y0, rect.y1), origin_.y, by1);
  const double y1 = std::clamp(std::max(rect.y0, rect.y1), origin_.y, by1);

  auto lines = [&](double lo, double hi, double org, std::size_t n) {
    std::vector<double> out{lo};
    const auto first = static_cast<long>(std::ceil((lo - org) / spacing_));
    const auto last = std::min(static_cast<long>(std::floor((hi - org) / spacing_)), static_cast<long>(n) - 1);
    for (long k = std::max(first, 0L); k <= last; ++k) {
      const double v = org + static_cast<double>(k) * spacing_;
      if (v > lo && v < hi) out.push_back(v);
    }
    out.push_back(hi);
    return out;
  };
  const auto xs = lines(x0, x1, origin_.x, cols_);
  const auto ys = lines(y0, y1, origin_.y, rows_);

  // Within a sub-rectangle the bilinear patch takes its minimum on the
  // boundary, and along axis-parallel lines it is linear between raster lines.
  double best = height_at(x0, y0);
  for (double x : xs) {
    best = std::min({best, height_at(x, y0), height_at(x, y1)});
  }
  for (double y : ys) {
    best = std::min({best, height_at(x0, y), height_at(x1, y)});
  }
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    for (std::size_t j = 1; j + 1 < ys.size(); ++j) best = std::min(best, height_at(xs[i], ys[j]));
  }
  return best;
}

double Terrain25D::height_tolerance(Point3 p) const {
  return kEpsGeom * std::max({1.0, std::abs(p.x), std::abs(p.y), std::abs(p.z)});
}

bool Terrain25D::segment_clear(Point3 a, Point3 b) const {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  std::vector<double> us{0.0, 1.0};
  auto add_crossings = [&](double a0, double d, double org, std::size_t n) {
    if (d == 0.0) return;
    for (std::size_t k = 0; k < n; ++k) {
      const double u = (org + static_cast<double>(k) * spacing_ - a0) / d;
      if (u > 0.0 && u < 1.0) us.push_back(u);
    }
  };
  add_crossings(a.x, dx, origin_.x, cols_);
  add_crossings(a.y, dy, origin_.y, rows_);
  std::sort(us.begin(), us.end());

  const double tol = std::max(height_tolerance(a), height_tolerance(b));
  auto gap = [&](double u) {
    const Point3 p = lerp(a, b, u);
    return height_at(p.x, p.y) - p.z;
  };
  double f_prev = gap(0.0);
  if (f_prev > tol) return false;
  for (std::size_t k = 0; k + 1 < us.size(); ++k) {
    const double ua = us[k], ub = us[k + 1];
    if (ub - ua <= 0.0) continue;
    const double fm = gap(0.5 * (ua + ub));
    const double f1 = gap(ub);
    if (fm > tol || f1 > tol) return false;
    const double qa = 2.0 * f_prev - 4.0 * fm + 2.0 * f1;
    const double qb = -3.0 * f_prev + 4.0 * fm - f1;
    if (qa < 0.0) {
      const double s = -qb / (2.0 * qa);
      if (s > 0.0 && s < 1.0 && f_prev + s * (qb + s * qa) > tol) return false;
    }
    f_prev = f1;
  }
  return true;
}

bool sees3d(const Terrain25D& terrain, Point3 q, Point3 t, double step) {
  if (!terrain.is_above(q) || !terrain.is_above(t)) {
    throw Error(ErrorCode::PointBelowTerrain, "visibility query from below the terrain");
  }
  if (!(step > 0.0)) step = terrain.spacing() / 4.0;
  const double len = distance(q, t);
  const auto n = static_cast<long>(std::ceil(len / step));
  if (n <= 1) return true;
  // Only samples no higher than the highest raster node can be blocked.
  const double zmax = terrain.max_height() + terrain.height_tolerance(std::max(q, t, [](Point3 a, Point3 b) {
                                                 return std::abs(a.z) < std::abs(b.z);
                                               }));
  for (long k = n - 1; k >= 1; --k) {
    const double u = static_cast<double>(k) / static_cast<double>(n);
    const Point3 p = lerp(q, t, u);
    if (p.z > zmax) continue;
    if (p.z < terrain.height_at(p.x, p.y) - terrain.height_tolerance(p)) return false;
  }
  return true;
}

}  // namespace tseek
