#include "tseek/oracle1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "tseek/error.hpp"

namespace tseek {

// ---------------------------------------------------------------------------
// VisRay

VisRay::VisRay(Point2 anchor, Point2 direction) : anchor_(anchor) {
  const double n = norm(direction);
  if (!(n > 0.0) || !is_finite(anchor)) throw Error(ErrorCode::InvalidParam, "ray needs a finite anchor and direction");
  direction_ = (1.0 / n) * direction;
  if (direction_.y < 0.0) throw Error(ErrorCode::InvalidParam, "visibility rays never point downwards");
  const double c = cross(direction_, Point2{0.0, 0.0} - anchor_);
  start_sign_ = c > 0.0 ? -1.0 : 1.0;
}

VisRay VisRay::vertical(Point2 anchor) { return VisRay(anchor, {0.0, 1.0}); }

VisRay VisRay::with_slope(Point2 anchor, double slope) {
  if (slope > 0.0) throw Error(ErrorCode::InvalidParam, "visibility ray slope must be <= 0");
  if (std::isinf(slope)) return vertical(anchor);
  return VisRay(anchor, {-1.0, -slope});
}

VisRay VisRay::through(Point2 anchor, Point2 through) { return VisRay(anchor, through - anchor); }

bool VisRay::is_vertical() const { return std::abs(direction_.x) <= 1e-12; }

double VisRay::slope() const {
  if (is_vertical()) return -std::numeric_limits<double>::infinity();
  return direction_.y / direction_.x;
}

double VisRay::distance_to_start() const { return std::abs(cross(direction_, Point2{0.0, 0.0} - anchor_)); }

Side VisRay::side() const { return anchor_.x >= 0.0 ? Side::Right : Side::Left; }

double VisRay::signed_offset(Point2 p) const { return start_sign_ * cross(direction_, p - anchor_); }

double competitive_ratio(double tau, double opt) {
  if (!(opt > kEpsGeom)) throw Error(ErrorCode::ZeroOptimal, "optimal distance is zero; ratio undefined");
  return tau / opt;
}

// ---------------------------------------------------------------------------
// Shortest paths over the visibility graph of the start and convex vertices

namespace {

struct VisibilityGraph {
  std::vector<Point2> nodes;  // nodes[0] is the start
  std::vector<double> dist;
  std::vector<int> prev;

  Polyline2 path_to(int n) const {
    std::vector<Point2> rev;
    for (int k = n; k >= 0; k = prev[k]) rev.push_back(nodes[k]);
    Polyline2 out;
    for (auto it = rev.rbegin(); it != rev.rend(); ++it) out.push_back(*it);
    return out;
  }
};

VisibilityGraph shortest_paths_from_start(const Terrain1D& terrain) {
  VisibilityGraph g;
  g.nodes.push_back({0.0, 0.0});
  for (const auto& v : terrain.convex_vertices()) {
    if (v.x == 0.0 && v.y == 0.0) continue;
    g.nodes.push_back(v);
  }
  const std::size_t n = g.nodes.size();
  g.dist.assign(n, std::numeric_limits<double>::infinity());
  g.prev.assign(n, -1);
  std::vector<bool> done(n, false);
  g.dist[0] = 0.0;
  // Dense graph: plain O(n^2) Dijkstra with lazily evaluated edges.
  for (std::size_t iter = 0; iter < n; ++iter) {
    int u = -1;
    for (std::size_t k = 0; k < n; ++k) {
      if (!done[k] && std::isfinite(g.dist[k]) && (u < 0 || g.dist[k] < g.dist[u])) u = static_cast<int>(k);
    }
    if (u < 0) break;
    done[u] = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      const double cand = g.dist[u] + distance(g.nodes[u], g.nodes[k]);
      if (cand < g.dist[k] && terrain.segment_clear(g.nodes[u], g.nodes[k])) {
        g.dist[k] = cand;
        g.prev[k] = u;
      }
    }
  }
  return g;
}

struct FieldValue {
  double length = std::numeric_limits<double>::infinity();
  int via = -1;
};

// Geodesic distance from the start to q, given the node distances. Nodes
// whose lower bound already reaches `cutoff` are skipped.
FieldValue distance_field(const Terrain1D& terrain, const VisibilityGraph& g, Point2 q, double cutoff) {
  FieldValue best;
  if (norm(q) >= cutoff) return best;
  if (terrain.segment_clear(g.nodes[0], q)) return {norm(q), 0};
  best.length = cutoff;
  for (std::size_t k = 1; k < g.nodes.size(); ++k) {
    if (!std::isfinite(g.dist[k])) continue;
    const double cand = g.dist[k] + distance(g.nodes[k], q);
    if (cand < best.length && terrain.segment_clear(g.nodes[k], q)) best = {cand, static_cast<int>(k)};
  }
  if (best.via < 0) best.length = std::numeric_limits<double>::infinity();
  return best;
}

}  // namespace

GeodesicResult geodesic_to_ray(const Terrain1D& terrain, const VisRay& ray) {
  const auto g = shortest_paths_from_start(terrain);
  double best = std::numeric_limits<double>::infinity();
  int best_node = -1;
  Point2 best_terminal;
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    if (!std::isfinite(g.dist[k])) continue;
    const Point2 n = g.nodes[k];
    const double param = ray.projection(n);
    Point2 end = ray.anchor();
    if (param >= 0.0) {
      const Point2 foot = ray.at(param);
      if (terrain.segment_clear(n, foot)) end = foot;
    }
    if (end == ray.anchor() && !terrain.segment_clear(n, end)) continue;
    const double total = g.dist[k] + distance(n, end);
    if (total < best) {
      best = total;
      best_node = static_cast<int>(k);
      best_terminal = end;
    }
  }
  if (best_node < 0) throw Error(ErrorCode::Unreachable, "no visibility-graph node reaches the ray");
  GeodesicResult out;
  out.length = best;
  out.path = g.path_to(best_node);
  if (distance(out.path.back(), best_terminal) > 0.0) out.path.push_back(best_terminal);
  out.terminal = best_terminal;
  return out;
}

GeodesicResult geodesic_to_visibility(const Terrain1D& terrain, const Target1D& t, double grid_step) {
  return geodesic_to_visibility(terrain, t, DiscretizedOptions{grid_step, 2});
}

GeodesicResult geodesic_to_visibility(const Terrain1D& terrain, const Target1D& target,
                                      const DiscretizedOptions& options, double* final_step) {
  const Point2 t = target.position;
  if (!terrain.is_above(t)) throw Error(ErrorCode::PointBelowTerrain, "target below the terrain");
  const auto g = shortest_paths_from_start(terrain);

  double best = std::numeric_limits<double>::infinity();
  int best_via = -1;
  Point2 best_q;
  auto consider = [&](Point2 q) {
    if (norm(q) >= best || !terrain.is_above(q)) return;
    if (!(q.x == t.x || terrain.segment_clear(q, t))) return;
    const auto f = distance_field(terrain, g, q, best);
    if (f.length < best) {
      best = f.length;
      best_via = f.via;
      best_q = q;
    }
  };

  consider({0.0, 0.0});
  for (const auto& v : terrain.vertices()) consider(v);
  consider(t);
  if (best_via < 0) throw Error(ErrorCode::Unreachable, "no candidate point sees the target");

  double step = options.grid_step > 0.0 ? options.grid_step : best / 200.0;
  const int rounds = std::max(1, options.rounds);
  for (int r = 0; r < rounds && best > 0.0; ++r) {
    if (r > 0) step *= 0.5;
    const long nx = static_cast<long>(std::ceil(best / step));
    for (long i = -nx; i <= nx; ++i) {
      const double x = static_cast<double>(i) * step;
      const double ground = terrain.height_at(x);
      const double ytop = std::sqrt(std::max(0.0, best * best - x * x));
      if (ground > ytop) continue;
      const long j0 = static_cast<long>(std::ceil(std::max(ground, -ytop) / step));
      for (long j = j0; static_cast<double>(j) * step <= ytop; ++j) consider({x, static_cast<double>(j) * step});
    }
  }
  if (final_step) *final_step = step;

  GeodesicResult out;
  out.length = best;
  out.path = g.path_to(best_via);
  if (distance(out.path.back(), best_q) > 0.0) out.path.push_back(best_q);
  out.terminal = best_q;
  return out;
}

std::optional<VisRay> visibility_boundary_ray(const Terrain1D& terrain, Point2 t) {
  const Point2 start{0.0, 0.0};
  if (t.x == 0.0 || terrain.segment_clear(start, t)) return std::nullopt;
  // horizon as seen from t, over the vertices between t and the start only
  double best_angle = -std::numeric_limits<double>::infinity();
  Point2 horizon;
  for (const auto& v : terrain.vertices()) {
    if (!(std::min(0.0, t.x) < v.x && v.x < std::max(0.0, t.x))) continue;
    const double angle = std::atan2(v.y - t.y, std::abs(t.x - v.x));
    if (angle > best_angle) {
      best_angle = angle;
      horizon = v;
    }
  }
  if (!std::isfinite(best_angle)) return std::nullopt;
  if (horizon.y < t.y) return std::nullopt;
  return VisRay::through(t, horizon);
}

namespace {

// Piece a + u d, u in [lo, hi]; hi may be infinite.
struct Piece {
  Point2 a;
  Point2 d;
  double lo = 0.0;
  double hi = 0.0;
};

}  // namespace

GeodesicResult geodesic_to_visibility_exact(const Terrain1D& terrain, Point2 t) {
  if (!terrain.is_above(t)) throw Error(ErrorCode::PointBelowTerrain, "target below the terrain");
  const auto g = shortest_paths_from_start(terrain);
  const double inf = std::numeric_limits<double>::infinity();
  if (terrain.segment_clear({0.0, 0.0}, t)) {
    GeodesicResult out;
    out.path = Polyline2(Point2{0.0, 0.0});
    return out;
  }

  // Walk away from t towards the start and beyond, tracking the highest
  // horizon seen from t. The region's boundary is made of the lit parts of
  // terrain edges and of each horizon ray up to the next horizon vertex.
  // Anything past t on the far side is reached through the vertical above t.
  const double sgn = t.x > 0.0 ? -1.0 : 1.0;
  const double scale = std::max({1.0, norm(t), std::abs(terrain.max_height()), std::abs(terrain.min_height())});
  auto rel = [&](Point2 p) { return Point2{sgn * (p.x - t.x), p.y - t.y}; };
  std::vector<Piece> pieces;
  std::optional<Point2> rec;

  auto add_lit = [&](Point2 a, Point2 d, double len) {
    double lo = 0.0, hi = len;
    if (rec) {
      // cross(rec, p) >= 0 means p is at or above the horizon line; linear in u
      const Point2 r = rel(*rec);
      const double f0 = cross(r, rel(a));
      const double f1 = cross(r, Point2{sgn * d.x, d.y});
      const double tol = kEpsGeom * scale * norm(r);
      if (f1 == 0.0) {
        if (f0 < -tol) return;
      } else if (f1 > 0.0) {
        lo = std::max(lo, (-tol - f0) / f1);
      } else {
        hi = std::min(hi, (-tol - f0) / f1);
      }
      if (lo > hi) return;
    }
    pieces.push_back({a, d, lo, hi});
  };
  auto ray_piece = [&](Point2 from, double until_x, double flat_y) {
    const Point2 d = (1.0 / distance(t, from)) * (from - t);
    double len = inf;
    if (std::isfinite(until_x)) len = std::abs(until_x - from.x) / std::abs(d.x);
    if (std::isnan(flat_y) == false && d.y < 0.0) len = std::min(len, (from.y - flat_y) / -d.y);
    pieces.push_back({from, d, 0.0, std::max(0.0, len)});
  };

  std::vector<Point2> side;
  for (const auto& v : terrain.vertices()) {
    if (sgn * (v.x - t.x) > 0.0) side.push_back(v);
  }
  if (sgn < 0.0) std::reverse(side.begin(), side.end());
  Point2 prev = t;
  for (const auto& q : side) {
    add_lit(prev, (1.0 / distance(prev, q)) * (q - prev), distance(prev, q));
    const Point2 rq = rel(q);
    if (!rec || cross(rel(*rec), rq) > 0.0) {
      if (rec) ray_piece(*rec, q.x, std::nan(""));
      rec = q;
    }
    prev = q;
  }
  // flat continuation past the last vertex
  add_lit(prev, {sgn, 0.0}, inf);
  if (rec) ray_piece(*rec, inf, prev.y);

  double best = inf;
  int best_node = -1;
  Point2 best_terminal;
  for (const auto& pc : pieces) {
    for (std::size_t k = 0; k < g.nodes.size(); ++k) {
      if (!std::isfinite(g.dist[k]) || g.dist[k] >= best) continue;
      const Point2 n = g.nodes[k];
      const double foot = std::clamp(dot(n - pc.a, pc.d), pc.lo, pc.hi);
      for (double u : {foot, pc.lo, pc.hi}) {
        if (!std::isfinite(u)) continue;
        const Point2 p = pc.a + u * pc.d;
        const double total = g.dist[k] + distance(n, p);
        if (total >= best || !terrain.is_above(p) || !terrain.segment_clear(n, p)) continue;
        best = total;
        best_node = static_cast<int>(k);
        best_terminal = p;
      }
    }
  }
  if (best_node < 0) throw Error(ErrorCode::Unreachable, "no visibility-graph node reaches vis(t)");
  GeodesicResult out;
  out.length = best;
  out.path = g.path_to(best_node);
  if (distance(out.path.back(), best_terminal) > 0.0) out.path.push_back(best_terminal);
  out.terminal = best_terminal;
  return out;
}

}  // namespace tseek
