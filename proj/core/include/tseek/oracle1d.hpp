#pragma once

#include <optional>

#include "tseek/geom.hpp"
#include "tseek/terrain1d.hpp"

namespace tseek {

enum class Side { Left, Right };

/// Half-line bounding the visibility region of a target. It starts at
/// `anchor` (the target or a point below the visible wedge) and runs along the
/// unit vector `direction`, which never points downwards.
class VisRay {
 public:
  static VisRay vertical(Point2 anchor);
  /// Ray right of the start whose slope in the +x direction is `slope` (<= 0).
  /// It rises towards the start; slope 0 gives a horizontal ray pointing at it.
  static VisRay with_slope(Point2 anchor, double slope);
  /// Ray from `anchor` through `through`.
  static VisRay through(Point2 anchor, Point2 through);

  Point2 anchor() const { return anchor_; }
  Point2 direction() const { return direction_; }

  bool is_vertical() const;
  /// Slope in the +x direction; -infinity for vertical rays.
  double slope() const;
  /// Perpendicular distance from the start (origin) to the supporting line.
  double distance_to_start() const;
  Side side() const;

  /// Signed distance of p from the supporting line, positive on the side
  /// away from the start (the visible side).
  double signed_offset(Point2 p) const;
  /// Position of the orthogonal projection of p along the ray, measured from the anchor.
  double projection(Point2 p) const { return dot(p - anchor_, direction_); }
  Point2 at(double param) const { return anchor_ + param * direction_; }

 private:
  VisRay(Point2 anchor, Point2 direction);

  Point2 anchor_;
  Point2 direction_;
  double start_sign_ = 1.0;
};

struct GeodesicResult {
  double length = 0.0;
  Polyline2 path;
  Point2 terminal;
};

/// Exact shortest path above the terrain from the start to the ray, over the
/// visibility graph of the start and the convex terrain vertices. The final
/// leg is perpendicular to the ray when that foot lies on the half-line.
GeodesicResult geodesic_to_ray(const Terrain1D& terrain, const VisRay& ray);

struct DiscretizedOptions {
  double grid_step = 0.0;  // <= 0 picks estimate / 200
  int rounds = 2;          // each round halves the step
};

/// Discretized shortest path from the start to the first point that sees t.
/// Candidate terminals are terrain vertices, t itself and the points of a
/// regular grid; each candidate is valued by its exact geodesic distance. The
/// result never undercuts the true optimum. Throws Unreachable if no candidate
/// sees t.
GeodesicResult geodesic_to_visibility(const Terrain1D& terrain, const Target1D& t, double grid_step);
GeodesicResult geodesic_to_visibility(const Terrain1D& terrain, const Target1D& t,
                                      const DiscretizedOptions& options, double* final_step = nullptr);

/// Boundary ray of vis(t) on the start's side: the half-line from t through the
/// highest horizon vertex between t and the start. Empty when the start already sees t.
std::optional<VisRay> visibility_boundary_ray(const Terrain1D& terrain, Point2 t);

/// Exact shortest path from the start to vis(t), over the boundary pieces of
/// vis(t) on the start's side.
GeodesicResult geodesic_to_visibility_exact(const Terrain1D& terrain, Point2 t);

double competitive_ratio(double tau, double opt);

}  // namespace tseek
