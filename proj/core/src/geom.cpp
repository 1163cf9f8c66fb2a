#include "tseek/geom.hpp"

#include <algorithm>

#include "tseek/error.hpp"

namespace tseek {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateSegment: return "DegenerateSegment";
    case ErrorCode::NoFlip: return "NoFlip";
    case ErrorCode::PointBelowTerrain: return "PointBelowTerrain";
    case ErrorCode::InvalidTerrain: return "InvalidTerrain";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::NeverCrosses: return "NeverCrosses";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::ZeroOptimal: return "ZeroOptimal";
    case ErrorCode::InvalidParam: return "InvalidParam";
    case ErrorCode::DegenerateFlat: return "DegenerateFlat";
    case ErrorCode::DisconnectedInput: return "DisconnectedInput";
    case ErrorCode::MixedDimensionality: return "MixedDimensionality";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

double max_abs(std::initializer_list<Point2> pts) {
  double m = 0.0;
  for (const auto& p : pts) m = std::max({m, std::abs(p.x), std::abs(p.y)});
  return m;
}

}  // namespace

Orientation orient(Point2 p, Point2 q, Point2 r) {
  const double area2 = cross(q - p, r - p);
  const double scale = max_abs({p, q, r});
  if (std::abs(area2) <= kEpsGeom * scale * scale) return Orientation::Collinear;
  return area2 > 0 ? Orientation::Left : Orientation::Right;
}

std::optional<Intersection> seg_intersect(const Segment2& s1, const Segment2& s2) {
  const double scale = std::max(1.0, max_abs({s1.a, s1.b, s2.a, s2.b}));
  const double tol = kEpsGeom * scale;
  if (distance(s1.a, s1.b) <= tol || distance(s2.a, s2.b) <= tol) {
    throw Error(ErrorCode::DegenerateSegment, "segment endpoints coincide");
  }

  const Point2 d1 = s1.b - s1.a;
  const Point2 d2 = s2.b - s2.a;
  const double denom = cross(d1, d2);
  const Point2 w = s2.a - s1.a;

  if (std::abs(denom) <= kEpsGeom * norm(d1) * norm(d2)) {
    // Parallel. Overlap only when collinear.
    if (std::abs(cross(d1, w)) > tol * norm(d1)) return std::nullopt;
    const double len2 = dot(d1, d1);
    double lo = dot(s2.a - s1.a, d1) / len2;
    double hi = dot(s2.b - s1.a, d1) / len2;
    if (lo > hi) std::swap(lo, hi);
    const double ptol = tol / norm(d1);
    if (hi < -ptol || lo > 1.0 + ptol) return std::nullopt;
    const double u = std::clamp(std::max(lo, 0.0), 0.0, 1.0);
    return Intersection{lerp(s1.a, s1.b, u), true};
  }

  const double u = cross(w, d2) / denom;
  const double v = cross(w, d1) / denom;
  const double ut = tol / norm(d1);
  const double vt = tol / norm(d2);
  if (u < -ut || u > 1.0 + ut || v < -vt || v > 1.0 + vt) return std::nullopt;

  const bool touching = std::abs(u) <= ut || std::abs(u - 1.0) <= ut || std::abs(v) <= vt ||
                        std::abs(v - 1.0) <= vt;
  return Intersection{lerp(s1.a, s1.b, std::clamp(u, 0.0, 1.0)), touching};
}

double first_param_on_segment(const std::function<bool(double)>& predicate, double tol) {
  if (predicate(0.0)) return 0.0;
  if (!predicate(1.0)) throw Error(ErrorCode::NoFlip, "predicate never becomes true on [0,1]");
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (predicate(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace tseek
