#include "tseek/instances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "tseek/error.hpp"

namespace tseek {

namespace {

std::string fmt_id(const std::string& base, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%.6g", base.c_str(), v);
  return buf;
}

}  // namespace

Instance1D gen_unobstructed_1d(int i, double d_r, double s) {
  const double scale = std::ldexp(1.0, i - 3);
  if (!(d_r > 0.0) || d_r > scale) throw Error(ErrorCode::InvalidParam, "need 0 < d_r <= 2^(i-3)");
  if (!(s > 0.0)) throw Error(ErrorCode::InvalidParam, "slope must be positive");
  // The near wall is pushed out a little so a guide turning point at d_r
  // stays outside the visibility region.
  const double depth = scale;
  const double w = depth / kSteep;
  const double x_n = d_r + 2e-6 * scale;
  const Point2 bottom{x_n + w, -depth};
  const double far = 8.0 * std::ldexp(1.0, i);
  auto terrain = Terrain1D::from_vertices({{-far, 0.0}, {0.0, 0.0}, {x_n, 0.0}, bottom, {x_n + 2.0 * w, 0.0}, {far, 0.0}});
  const auto ray = VisRay::through(bottom, {x_n, 0.0});
  const double opt = ray.distance_to_start();
  return {fmt_id("unobstructed_i" + std::to_string(i) + "_dr", d_r), std::move(terrain), {bottom}, ray, opt, opt,
          {"unobstructed_1d", {{"i", i}, {"d_r", d_r}, {"s", s}}, 0}};
}

Instance1D gen_peak_worstcase_1d(double d_r, double s) {
  if (!(d_r >= 0.0 && d_r <= 1.0)) throw Error(ErrorCode::InvalidParam, "need 0 <= d_r <= 1");
  if (!(s > 0.0)) throw Error(ErrorCode::InvalidParam, "slope must be positive");
  const double x_a = std::max(d_r, 1e-6);
  const Point2 apex{x_a, s * (4.0 - x_a)};
  const double base = std::max(x_a - apex.y / kSteep, 0.5 * x_a);
  const double w = (apex.y + 1.0) / kSteep;
  const Point2 bottom{x_a + w, -1.0};
  auto terrain = Terrain1D::from_vertices(
      {{-16.0, 0.0}, {0.0, 0.0}, {base, 0.0}, apex, bottom, {x_a + 2.0 * w, 0.0}, {16.0, 0.0}});
  const double opt = norm(apex);
  return {fmt_id("peak_worstcase_dr", d_r), std::move(terrain), {bottom}, VisRay::through(bottom, apex), opt, opt,
          {"peak_worstcase_1d", {{"d_r", d_r}, {"s", s}}, 0}};
}

std::vector<Instance1D> gen_thm1_pits(int d, double mountain_distance) {
  if (d < 1) throw Error(ErrorCode::InvalidParam, "need d >= 1");
  const int reach = 9 * d;
  if (mountain_distance <= 0.0) mountain_distance = 100.0 * reach;
  if (!(mountain_distance > reach + 1.0)) throw Error(ErrorCode::InvalidParam, "mountain must lie beyond the pits");

  const double depth = 1.0;
  const double w = depth / kSteep;
  std::vector<Point2> v{{-2.0 * reach, 0.0}};
  std::vector<Point2> bottoms;
  std::vector<int> centers;
  for (int c = -reach; c <= reach; ++c) {
    if (c == 0) {
      v.push_back({0.0, 0.0});
      continue;
    }
    // Near wall pushed away from the start, see gen_unobstructed_1d.
    const double sgn = c > 0 ? 1.0 : -1.0;
    const double x_n = c + sgn * 2e-6 * std::max(1, std::abs(c));
    const Point2 near{x_n, 0.0};
    const Point2 bottom{x_n + sgn * w, -depth};
    const Point2 far{x_n + sgn * 2.0 * w, 0.0};
    if (c < 0) {
      v.insert(v.end(), {far, bottom, near});
    } else {
      v.insert(v.end(), {near, bottom, far});
    }
    bottoms.push_back(bottom);
    centers.push_back(c);
  }
  const double m = mountain_distance;
  const double hd = static_cast<double>(d);
  const double wall = hd / kSteep;
  const Point2 top_far{m + wall + 1.0, hd};
  v.insert(v.end(), {{m, 0.0}, {m + wall, hd}, top_far, {top_far.x + wall, 0.0}, {top_far.x + 1.0, 0.0}});
  const auto terrain = Terrain1D::from_vertices(v);

  std::vector<Instance1D> out;
  const InstanceMeta meta{"thm1_pits", {{"d", hd}, {"mountain_distance", m}}, 0};
  for (std::size_t k = 0; k < bottoms.size(); ++k) {
    const double opt = std::abs(bottoms[k].x) - w;
    out.push_back({"thm1_d" + std::to_string(d) + "_pit" + std::to_string(centers[k]), terrain, {bottoms[k]},
                   std::nullopt, opt, opt, meta});
  }
  out.push_back({"thm1_d" + std::to_string(d) + "_mountain", terrain, {top_far},
                 VisRay::through(top_far, top_far - Point2{1.0, 0.0}), hd, hd, meta});
  return out;
}

// ---------------------------------------------------------------------------
// 2.5D pit grid

PitGrid pit_grid_params(double lambda) {
  if (!(lambda >= 4.0) || !std::isfinite(lambda)) throw Error(ErrorCode::InvalidParam, "pit grid needs lambda >= 4");
  PitGrid g;
  g.lambda = lambda;
  g.k = std::max(1, static_cast<int>(std::lround(std::sqrt(lambda) / 2.0)));
  g.delta = 1.0 / g.k;
  g.eps_pit = std::sqrt(lambda) / 4.0;
  return g;
}

Point2 pit_center(const PitGrid& g, int a, int b) {
  const double h = g.delta / std::sqrt(2.0);
  return {(a + 1 - b) * h, (a + 1 + b) * h};
}

double point_to_pyramid_cone(Point3 p, Point2 apex_xy, double depth, double lambda) {
  const double c = lambda / std::sqrt(2.0);
  const Point3 q{p.x - apex_xy.x, p.y - apex_xy.y, p.z + depth};
  if (q.z >= c * (std::abs(q.x) + std::abs(q.y))) return 0.0;
  double best = norm(q);
  const double nn = std::sqrt(1.0 + 2.0 * c * c);
  for (double sx : {-1.0, 1.0}) {
    for (double sy : {-1.0, 1.0}) {
      // Face z = c (sx x + sy y) on the quadrant sx x >= 0, sy y >= 0.
      const double dist = (q.z - c * (sx * q.x + sy * q.y)) / nn;
      const Point3 r = q - dist * Point3{-c * sx / nn, -c * sy / nn, 1.0 / nn};
      if (sx * r.x >= -1e-15 && sy * r.y >= -1e-15) best = std::min(best, std::abs(dist));
    }
    for (int axis = 0; axis < 2; ++axis) {
      const Point3 dir = (1.0 / std::sqrt(1.0 + c * c)) * (axis == 0 ? Point3{sx, 0.0, c} : Point3{0.0, sx, c});
      const double t = q.x * dir.x + q.y * dir.y + q.z * dir.z;
      if (t > 0.0) best = std::min(best, norm(q - t * dir));
    }
  }
  return best;
}

Instance25D gen_pit_grid_25d(double lambda, int pit_a, int pit_b, PitGrid* info) {
  const PitGrid g = pit_grid_params(lambda);
  if (pit_a < 0) pit_a = g.k - 1;
  if (pit_b < 0) pit_b = g.k - 1;
  if (pit_a >= g.k || pit_b >= g.k) throw Error(ErrorCode::InvalidParam, "pit index out of range");
  if (info) *info = g;

  // Pit centres are raster nodes: delta / sqrt 2 spans m cells.
  const int m = 8;
  const double h = g.delta / std::sqrt(2.0);
  const double sp = h / m;
  const double c = lambda / std::sqrt(2.0);
  const double radius = g.eps_pit / c;  // L1 radius of each pit
  const int margin = static_cast<int>(std::ceil(radius / sp)) + 2;
  const int ix0 = std::min(0, (2 - g.k) * m) - margin;
  const int ix1 = g.k * m + margin;
  const int iy0 = -margin;
  const int iy1 = (2 * g.k - 1) * m + margin;
  const auto cols = static_cast<std::size_t>(ix1 - ix0 + 1);
  const auto rows = static_cast<std::size_t>(iy1 - iy0 + 1);

  std::vector<double> heights(cols * rows, 0.0);
  for (int a = 0; a < g.k; ++a) {
    for (int b = 0; b < g.k; ++b) {
      const int cx = (a + 1 - b) * m;
      const int cy = (a + 1 + b) * m;
      for (int j = cy - margin; j <= cy + margin; ++j) {
        for (int i = cx - margin; i <= cx + margin; ++i) {
          const double l1 = (std::abs(i - cx) + std::abs(j - cy)) * sp;
          double& cell = heights[static_cast<std::size_t>(j - iy0) * cols + static_cast<std::size_t>(i - ix0)];
          cell = std::min(cell, std::min(0.0, c * l1 - g.eps_pit));
        }
      }
    }
  }
  auto terrain = Terrain25D::from_raster(std::move(heights), cols, rows, sp, {ix0 * sp, iy0 * sp});
  const Point2 center = pit_center(g, pit_a, pit_b);
  const Point3 target{center.x, center.y, -g.eps_pit};
  const double opt = point_to_pyramid_cone({0.0, 0.0, 0.0}, center, g.eps_pit, lambda);
  return {"pit_grid_l" + std::to_string(static_cast<long>(lambda)) + "_p" + std::to_string(pit_a) + std::to_string(pit_b),
          std::move(terrain),
          target,
          opt,
          opt,
          {"pit_grid_25d",
           {{"lambda", lambda}, {"k", g.k}, {"delta", g.delta}, {"eps_pit", g.eps_pit}, {"pit_a", pit_a}, {"pit_b", pit_b}},
           0}};
}

// ---------------------------------------------------------------------------
// Random families

Instance1D gen_random_1d(std::uint64_t seed, int n_vertices, double slope_max) {
  if (n_vertices < 3 || !(slope_max >= 0.0)) throw Error(ErrorCode::InvalidParam, "need n_vertices >= 3 and slope_max >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> step(0.1, 1.0);
  std::uniform_real_distribution<double> slope(-slope_max, slope_max);

  std::vector<Point2> v{{0.0, 0.0}};
  for (int k = 1; k < n_vertices; ++k) {
    const double dx = step(rng);
    v.push_back({v.back().x + dx, v.back().y + slope(rng) * dx});
  }
  // Start somewhere in the middle third.
  std::uniform_int_distribution<int> pick_start(n_vertices / 3, 2 * n_vertices / 3);
  const Point2 st = v[pick_start(rng)];
  for (auto& p : v) p = p - st;
  auto terrain = Terrain1D::from_vertices(std::move(v));

  std::vector<Point2> hidden;
  for (const auto& p : terrain.vertices()) {
    if (!terrain.segment_clear({0.0, 0.0}, p)) hidden.push_back(p);
  }
  InstanceMeta meta{"random_1d", {{"n_vertices", n_vertices}, {"slope_max", slope_max}}, seed};
  const std::string id = "random1d_" + std::to_string(seed);
  if (hidden.empty()) {
    const auto verts = terrain.vertices();
    const Point2 t = verts.back();
    return {id, std::move(terrain), {t}, std::nullopt, 0.0, 0.0, std::move(meta)};
  }
  std::uniform_int_distribution<std::size_t> pick(0, hidden.size() - 1);
  const Point2 t = hidden[pick(rng)];
  const double lower = geodesic_to_visibility_exact(terrain, t).length;
  double step_used = 0.0;
  const double upper = geodesic_to_visibility(terrain, {t}, DiscretizedOptions{}, &step_used).length;
  meta.params.push_back({"grid_step", step_used});
  return {id, std::move(terrain), {t}, std::nullopt, lower, upper, std::move(meta)};
}

namespace {

// Diamond-square on a (2^n + 1) square, amplitude halving per level.
std::vector<double> midpoint_displacement(std::mt19937_64& rng, int size) {
  std::uniform_real_distribution<double> noise(-1.0, 1.0);
  std::vector<double> h(static_cast<std::size_t>(size) * size, 0.0);
  auto at = [&](int i, int j) -> double& { return h[static_cast<std::size_t>(j) * size + i]; };
  for (int j : {0, size - 1}) {
    for (int i : {0, size - 1}) at(i, j) = noise(rng);
  }
  double amp = 1.0;
  for (int half = (size - 1) / 2; half >= 1; half /= 2) {
    const int full = 2 * half;
    for (int j = half; j < size; j += full) {
      for (int i = half; i < size; i += full) {
        at(i, j) = 0.25 * (at(i - half, j - half) + at(i + half, j - half) + at(i - half, j + half) +
                           at(i + half, j + half)) + amp * noise(rng);
      }
    }
    for (int j = 0; j < size; j += half) {
      for (int i = (j / half) % 2 == 0 ? half : 0; i < size; i += full) {
        double sum = 0.0;
        int n = 0;
        for (const auto& [di, dj] : {std::pair{-half, 0}, {half, 0}, {0, -half}, {0, half}}) {
          const int a = i + di, b = j + dj;
          if (a < 0 || b < 0 || a >= size || b >= size) continue;
          sum += at(a, b);
          ++n;
        }
        at(i, j) = sum / n + amp * noise(rng);
      }
    }
    amp *= 0.5;
  }
  return h;
}

}  // namespace

std::pair<double, double> sampled_opt_bounds(const Terrain25D& terrain, Point3 t) {
  const Point3 start{0.0, 0.0, 0.0};
  const double sp = terrain.spacing();
  // Nearest visible sample on a lattice over the raster, up to the top of the
  // terrain plus the start-to-target distance.
  const double zs = 0.5 * sp;
  const double ztop = terrain.max_height() + norm(t);
  double nearest = std::numeric_limits<double>::infinity();
  double nearest_clear = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < terrain.rows(); ++r) {
    for (std::size_t c = 0; c < terrain.cols(); ++c) {
      const Point2 p = terrain.node_position(c, r);
      const double ground = terrain.node(c, r);
      for (double z = std::ceil(ground / zs) * zs; z <= ztop; z += zs) {
        const Point3 q{p.x, p.y, z};
        // |q| grows with z once z >= 0.
        if (z >= 0.0 && norm(q) >= nearest_clear) break;
        if (!terrain.segment_clear(q, t)) continue;
        nearest = std::min(nearest, norm(q));
        if (terrain.segment_clear(start, q)) nearest_clear = std::min(nearest_clear, norm(q));
        if (z >= 0.0) break;
      }
    }
  }
  const double slack = 0.5 * std::sqrt(2.0 * sp * sp + zs * zs);
  return {std::isfinite(nearest) ? std::max(0.0, nearest - slack) : 0.0, nearest_clear};
}

Instance25D gen_random_25d(std::uint64_t seed, int size, double lambda_target) {
  if (size < 3 || ((size - 1) & (size - 2)) != 0) throw Error(ErrorCode::InvalidParam, "size must be 2^n + 1");
  if (!(lambda_target > 0.0)) throw Error(ErrorCode::InvalidParam, "lambda_target must be positive");
  std::mt19937_64 rng(seed);
  const double extent = 4.0;
  const double sp = extent / (size - 1);
  auto raw = Terrain25D::from_raster(midpoint_displacement(rng, size), size, size, sp, {-0.5 * extent, -0.5 * extent});
  std::vector<double> h = raw.heights();
  const double scale = raw.lipschitz() > 0.0 ? lambda_target / raw.lipschitz() : 0.0;
  for (double& v : h) v *= scale;
  auto terrain = Terrain25D::from_raster(std::move(h), size, size, sp, raw.origin());

  const Point3 start{0.0, 0.0, 0.0};
  std::vector<Point3> hidden;
  for (std::size_t r = 0; r < terrain.rows(); ++r) {
    for (std::size_t c = 0; c < terrain.cols(); ++c) {
      const Point2 p = terrain.node_position(c, r);
      const Point3 q{p.x, p.y, terrain.node(c, r)};
      if (!terrain.segment_clear(start, q)) hidden.push_back(q);
    }
  }
  InstanceMeta meta{"random_25d", {{"size", size}, {"lambda_target", lambda_target}}, seed};
  const std::string id = "random25d_" + std::to_string(seed);
  if (hidden.empty()) return {id, std::move(terrain), {extent / 2, extent / 2, 0.0}, 0.0, 0.0, std::move(meta)};
  std::uniform_int_distribution<std::size_t> pick(0, hidden.size() - 1);
  const Point3 t = hidden[pick(rng)];

  const auto [lower, upper] = sampled_opt_bounds(terrain, t);
  meta.params.push_back({"sample_step", sp});
  return {id, std::move(terrain), t, lower, upper, std::move(meta)};
}

Instance25D gen_single_cone_25d(double lambda, double height) {
  if (!(lambda > 0.0) || !(height > 0.0)) throw Error(ErrorCode::InvalidParam, "cone needs lambda > 0 and height > 0");
  const double c = lambda / std::sqrt(2.0);
  const double radius = height / c;  // L1 radius of the base
  const double sp = radius / 8.0;
  const double cx = sp * std::ceil((radius + 0.25) / sp);  // base starts about 0.25 from the start; apex on a node
  const int ix0 = -static_cast<int>(std::ceil(0.5 / sp));
  const int ix1 = static_cast<int>(std::ceil((cx + radius + 0.5) / sp));
  const int iy1 = static_cast<int>(std::ceil((radius + 0.5) / sp));
  const auto cols = static_cast<std::size_t>(ix1 - ix0 + 1);
  const auto rows = static_cast<std::size_t>(2 * iy1 + 1);
  std::vector<double> h(cols * rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t col = 0; col < cols; ++col) {
      const double x = (ix0 + static_cast<int>(col)) * sp;
      const double y = (static_cast<int>(r) - iy1) * sp;
      h[r * cols + col] = std::max(0.0, height - c * (std::abs(x - cx) + std::abs(y)));
    }
  }
  auto terrain = Terrain25D::from_raster(std::move(h), cols, rows, sp, {ix0 * sp, -iy1 * sp});
  const Point3 t{cx + radius, 0.0, 0.0};
  const auto [lower, upper] = sampled_opt_bounds(terrain, t);
  return {"cone_l" + std::to_string(static_cast<long>(lambda)), std::move(terrain), t, lower, upper,
          {"single_cone_25d", {{"lambda", lambda}, {"height", height}}, 0}};
}

}  // namespace tseek
