#pragma once

#include <cstddef>
#include <vector>

#include "tseek/geom.hpp"

namespace tseek {

struct Rect {
  double x0, y0, x1, y1;
};

// Bilinear height raster. Node (c, r) sits at origin() + spacing * (c, r);
// heights are row-major (r * cols + c). Outside the raster the boundary
// values extend flat. Heights are shifted on construction so T(0,0) = 0.
class Terrain25D {
 public:
  static Terrain25D from_raster(std::vector<double> heights, std::size_t cols, std::size_t rows, double spacing,
                                Point2 origin);
  static Terrain25D flat(double half_extent, double spacing = 1.0);

  std::size_t cols() const { return cols_; }
  std::size_t rows() const { return rows_; }
  double spacing() const { return spacing_; }
  Point2 origin() const { return origin_; }
  const std::vector<double>& heights() const { return heights_; }
  double node(std::size_t c, std::size_t r) const { return heights_[r * cols_ + c]; }
  Point2 node_position(std::size_t c, std::size_t r) const;

  double height_at(double x, double y) const;
  double height_at(Point2 p) const { return height_at(p.x, p.y); }
  double lipschitz() const { return lipschitz_; }
  double max_height() const { return max_height_; }
  double min_height() const { return min_height_; }

  double min_height_in_rect(const Rect& rect) const;

  double height_tolerance(Point3 p) const;
  bool is_above(Point3 p) const { return p.z >= height_at(p.x, p.y) - height_tolerance(p); }

  // Exact clearance of the segment ab: along its projection the surface is
  // quadratic between raster lines, so each piece is checked at its ends and
  // its stationary point.
  bool segment_clear(Point3 a, Point3 b) const;

 private:
  Terrain25D(std::vector<double> heights, std::size_t cols, std::size_t rows, double spacing, Point2 origin);

  // Raster coordinate of x clamped to [0, n - 1], and the cell holding it.
  void locate(double world, double origin, std::size_t n, std::size_t& cell, double& frac) const;

  std::vector<double> heights_;
  std::size_t cols_ = 0;
  std::size_t rows_ = 0;
  double spacing_ = 1.0;
  Point2 origin_;
  double lipschitz_ = 0.0;
  double max_height_ = 0.0;
  double min_height_ = 0.0;
};

// Sampled visibility: samples the open segment qt at spacing <= step
// (step <= 0 means spacing / 4) and requires every sample to clear the
// terrain up to the height tolerance. Throws PointBelowTerrain.
bool sees3d(const Terrain25D& terrain, Point3 q, Point3 t, double step = 0.0);

}  // namespace tseek
