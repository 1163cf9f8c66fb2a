#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

namespace tseek {

/// Relative tolerance used by every geometric predicate in the library.
inline constexpr double kEpsGeom = 1e-9;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double k, Point2 a) { return {k * a.x, k * a.y}; }
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Point3 operator+(Point3 a, Point3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Point3 operator-(Point3 a, Point3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Point3 operator*(double k, Point3 a) { return {k * a.x, k * a.y, k * a.z}; }
  friend bool operator==(const Point3&, const Point3&) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double norm(Point3 a) { return std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z); }
inline double distance(Point2 a, Point2 b) { return norm(b - a); }
inline double distance(Point3 a, Point3 b) { return norm(b - a); }
inline Point2 lerp(Point2 a, Point2 b, double u) { return a + u * (b - a); }
inline Point3 lerp(Point3 a, Point3 b, double u) { return a + u * (b - a); }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }
inline bool is_finite(Point3 p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

struct Segment2 {
  Point2 a;
  Point2 b;
};

enum class Orientation { Left, Right, Collinear };

/// Sign of the signed area of triangle pqr. Collinear when the area is within
/// kEpsGeom times the squared largest coordinate magnitude.
Orientation orient(Point2 p, Point2 q, Point2 r);

struct Intersection {
  Point2 point;
  bool touching = false;  // endpoint contact or collinear overlap, not a proper crossing
};

/// Intersection of two closed segments. Throws DegenerateSegment when either
/// segment has coincident endpoints.
std::optional<Intersection> seg_intersect(const Segment2& a, const Segment2& b);

/// Smallest u in [0,1] where a monotone predicate flips from false to true,
/// to absolute tolerance `tol`. Returns 0 when the predicate already holds at 0.
/// Throws NoFlip when it is false on the whole interval.
double first_param_on_segment(const std::function<bool(double)>& predicate, double tol = 1e-10);

/// Vertex list with cumulative arc length.
template <typename P>
class Polyline {
 public:
  Polyline() = default;
  explicit Polyline(P start) { push_back(start); }

  void push_back(P p) {
    if (vertices_.empty()) {
      cumulative_.push_back(0.0);
    } else {
      cumulative_.push_back(cumulative_.back() + distance(vertices_.back(), p));
    }
    vertices_.push_back(p);
  }

  const std::vector<P>& vertices() const { return vertices_; }
  const std::vector<double>& cumulative_length() const { return cumulative_; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  const P& front() const { return vertices_.front(); }
  const P& back() const { return vertices_.back(); }
  const P& operator[](std::size_t i) const { return vertices_[i]; }
  double length() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }

 private:
  std::vector<P> vertices_;
  std::vector<double> cumulative_;
};

using Polyline2 = Polyline<Point2>;
using Polyline3 = Polyline<Point3>;

}  // namespace tseek
