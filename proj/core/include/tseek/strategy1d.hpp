#pragma once

#include <cmath>
#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tseek/geom.hpp"
#include "tseek/oracle1d.hpp"
#include "tseek/terrain1d.hpp"

namespace tseek {

struct StrategySpec1D {
  double s = std::sqrt(2.0) / 6.0;
  double eps0 = 1e-6;
  bool practical_start = false;
  double budget = 1e5;
  /// Accept slopes outside (2/9, 4/9) with a warning instead of rejecting them.
  bool allow_any_slope = false;

  /// Throws InvalidSpec.
  void validate() const;
};

/// The doubling guide path: right segments h_r^i for odd i and left segments
/// h_l^i for even i, realized from segment i0 = ceil(log2(eps0)) upwards.
class ProjectedPath {
 public:
  ProjectedPath(double s, double eps0);

  double s() const { return s_; }
  int first_index() const { return i0_; }

  static bool is_right(int i) { return (i % 2 + 2) % 2 == 1; }
  static int direction(int i) { return is_right(i) ? 1 : -1; }

  double domain_lo(int i) const;
  double domain_hi(int i) const;
  double start_x(int i) const { return is_right(i) ? domain_lo(i) : domain_hi(i); }
  double end_x(int i) const { return is_right(i) ? domain_hi(i) : domain_lo(i); }

  /// Height of segment i's line at x (no domain check).
  double height(int i, double x) const;
  /// Throws OutOfDomain when x is outside segment i's domain.
  Point2 point(int i, double x) const;
  Point2 turning_point(int i) const { return point(i, end_x(i)); }

  /// Segment indices whose height range can meet [y_lo, y_hi].
  std::pair<int, int> segments_in_height_range(double y_lo, double y_hi) const;

  /// Index of a segment containing p (lowest index first), if any.
  std::optional<int> segment_through(Point2 p) const;

  /// Polyline of the guide path: the start stub, then segments from i0 at x = 0
  /// through the end of segment `last`.
  Polyline2 polyline(int last) const;

 private:
  double s_;
  int i0_;
};

Point2 projected_point(const ProjectedPath& pp, int i, double x);

enum class EventKind {
  Start,
  FollowPi,
  ClimbTerrain,
  DiagonalDeviation,
  TurnAtPiPoint,
  TurnAtPiTurningPoint,
  Stop,
};

std::string_view to_string(EventKind kind);

struct PathEvent {
  EventKind kind;
  int pi_segment = 0;      // guide segment index, where meaningful
  std::size_t vertex = 0;  // polyline vertex where the event happens
};

struct SearchPath1D {
  Polyline2 polyline;
  std::vector<PathEvent> events;
  double total_length = 0.0;
  bool stopped = false;
  Point2 p_t;        // stop point when stopped
  double tau = 0.0;  // arc length at the stop point
};

class StopCondition {
 public:
  struct Ray {
    VisRay ray;
  };
  struct Target {
    Point2 t;
  };
  struct Length {
    double length;
  };

  static StopCondition ray(const VisRay& r) { return StopCondition(Ray{r}); }
  static StopCondition target(Point2 t) { return StopCondition(Target{t}); }
  /// Stop after a fixed arc length (used for drawing and invariant checks).
  static StopCondition length(double l) { return StopCondition(Length{l}); }

  const std::variant<Ray, Target, Length>& kind() const { return kind_; }

 private:
  explicit StopCondition(std::variant<Ray, Target, Length> k) : kind_(std::move(k)) {}
  std::variant<Ray, Target, Length> kind_;
};

/// Closed x-intervals of terrain that a simulation inspected.
using ProbeLog = std::vector<std::pair<double, double>>;

/// Simulates the search path until the stop condition fires. Throws
/// BudgetExceeded when a ray or target stop does not fire within the budget.
/// When `probes` is given every terrain query interval is appended to it.
SearchPath1D build_search_path(const Terrain1D& terrain, const StrategySpec1D& spec,
                               const StopCondition& stop, ProbeLog* probes = nullptr);

/// Length of a slope-s path up to height y.
double tau_star(const StrategySpec1D& spec, double y);

struct RayCrossing {
  Point2 p_t;
  double tau = 0.0;
};

/// First point where the path enters the open side of the ray beyond its
/// supporting line. Touching the line does not count. Throws NeverCrosses.
RayCrossing cross_ray(const Polyline2& path, const VisRay& ray);

/// First crossing within the single piece a->b; parameter in [0, 1].
std::optional<double> ray_crossing_param(Point2 a, Point2 b, const VisRay& ray);

}  // namespace tseek
