#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tseek/geom.hpp"

namespace tseek {

/// x-monotone piecewise-linear height function, continued flat beyond both
/// end vertices. Always contains the start vertex (0, 0).
class Terrain1D {
 public:
  /// Builds a terrain from vertices with strictly increasing x, translated so
  /// that the surface point above `start_x` becomes the origin. A vertex is
  /// inserted at the origin when none exists there.
  static Terrain1D from_vertices(std::vector<Point2> vertices, double start_x = 0.0);

  /// A terrain that is flat at height 0 over [-extent, extent].
  static Terrain1D flat(double extent = 1.0);

  std::span<const Point2> vertices() const { return vertices_; }

  double height_at(double x) const;

  /// Slope of the terrain immediately beyond x when moving in direction `dir`
  /// (+1 or -1), measured as height gained per unit of horizontal travel.
  double forward_slope(double x, int dir) const;

  /// Vertices whose x lies strictly inside (lo, hi).
  std::span<const Point2> vertices_between(double lo, double hi) const;

  /// Local maxima sorted by x. Plateau maxima report both plateau endpoints.
  std::vector<Point2> peaks() const;

  /// Vertices where the terrain turns downwards (slope decreases). Shortest
  /// paths above the terrain bend only at these.
  std::vector<Point2> convex_vertices() const;

  double min_height() const;
  double max_height() const;

  /// Vertical tolerance used for on/above-terrain checks at point p.
  double height_tolerance(Point2 p) const;

  bool is_above(Point2 p) const { return p.y >= height_at(p.x) - height_tolerance(p); }

  /// True when segment ab lies on or above the terrain and does not properly
  /// cross it. Touching the terrain does not block.
  bool segment_clear(Point2 a, Point2 b) const;

 private:
  explicit Terrain1D(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {}

  std::vector<Point2> vertices_;
};

struct Target1D {
  Point2 position;
};

/// Target-visibility predicate: q sees t iff segment qt does not properly
/// intersect the terrain. Throws PointBelowTerrain if either point is below.
bool sees(const Terrain1D& terrain, Point2 q, Point2 t);

/// Smallest u in [0,1] such that a + u(b - a) sees t, computed exactly from
/// the linear blocking constraints. Empty when no point of the segment sees t.
std::optional<double> first_visible_param(const Terrain1D& terrain, Point2 a, Point2 b, Point2 t);

}  // namespace tseek
