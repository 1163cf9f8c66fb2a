#include <cmath>
#include <limits>

#include "doctest.h"
#include "tseek/error.hpp"
#include "tseek/instances.hpp"
#include "tseek/oracle1d.hpp"

using namespace tseek;

namespace {

// One peak at (2, 2), valley right of it. The only convex vertex the start
// can need is the peak, so shortest paths are either straight or bend there.
Terrain1D one_peak() { return Terrain1D::from_vertices({{-5, 0}, {0, 0}, {2, 2}, {3, -3}, {4, -3}, {8, 0}}); }

double brute_dist(const Terrain1D& t, Point2 q) {
  if (t.segment_clear({0, 0}, q)) return norm(q);
  const Point2 p{2, 2};
  return norm(p) + distance(p, q);
}

// Dense-sampling visibility oracle.
bool sees_by_sampling(const Terrain1D& t, Point2 q, Point2 target) {
  for (int k = 1; k < 4000; ++k) {
    const Point2 p = lerp(q, target, k / 4000.0);
    if (p.y < t.height_at(p.x) - 1e-9) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("VisRay basics") {
  const auto v = VisRay::vertical({3, -1});
  CHECK(v.is_vertical());
  CHECK(v.distance_to_start() == doctest::Approx(3.0));
  CHECK(v.side() == Side::Right);
  CHECK(v.signed_offset({4, 0}) > 0);
  CHECK(v.signed_offset({2, 0}) < 0);

  const auto r = VisRay::with_slope({4, 0}, -1.0);
  CHECK(r.slope() == doctest::Approx(-1.0));
  CHECK(r.distance_to_start() == doctest::Approx(4.0 / std::sqrt(2.0)));
  CHECK_THROWS_AS(VisRay::with_slope({4, 0}, 1.0), Error);
}

TEST_CASE("sees agrees with dense sampling") {
  const auto t = one_peak();
  const Point2 target{3.5, -3};
  for (double x = -4; x <= 7.5; x += 0.37) {
    for (double dy = 0.0; dy < 6; dy += 0.53) {
      const Point2 q{x, t.height_at(x) + dy};
      CHECK(sees(t, q, target) == sees_by_sampling(t, q, target));
    }
  }
  CHECK_THROWS_AS(sees(t, {0, -1}, target), Error);
}

TEST_CASE("geodesic_to_ray against sampling along the ray") {
  const auto t = one_peak();
  // ray from the pit bottom through the peak, opening to the left/up
  const auto ray = VisRay::through({3.5, -3}, {2, 2});
  const auto g = geodesic_to_ray(t, ray);
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 200000; ++k) {
    const Point2 q = ray.at(k * 1e-4);
    if (!t.is_above(q)) continue;
    best = std::min(best, brute_dist(t, q));
  }
  CHECK(g.length >= best - 1e-4);  // sampling step along the ray
  CHECK(g.length <= best + 1e-12);
}

TEST_CASE("geodesic_to_visibility against a brute grid") {
  const auto t = one_peak();
  const Target1D target{{3.5, -3}};
  const auto g = geodesic_to_visibility(t, target, 0.01);
  double best = std::numeric_limits<double>::infinity();
  for (double x = -1; x <= 6; x += 0.005) {
    for (double y = t.height_at(x); y <= 5; y += 0.005) {
      const Point2 q{x, y};
      if (!sees(t, q, target.position)) continue;
      best = std::min(best, brute_dist(t, q));
    }
  }
  CHECK(g.length >= best - 0.02);
  CHECK(g.length <= best + 1e-9);
  const auto ray = visibility_boundary_ray(t, target.position);
  REQUIRE(ray);
  // exact opt is the ray distance; the discretized value sits above it within a step or so
  const double exact = geodesic_to_ray(t, *ray).length;
  CHECK(g.length >= exact - 1e-9);
  CHECK(g.length <= exact + 0.02);
}

TEST_CASE("visibility boundary ray is empty when the start sees t") {
  const auto t = one_peak();
  CHECK_FALSE(visibility_boundary_ray(t, {-3, 0}));
  CHECK(visibility_boundary_ray(t, {3.5, -3}));
}

TEST_CASE("competitive_ratio") {
  CHECK(competitive_ratio(9.0, 3.0) == doctest::Approx(3.0));
  CHECK_THROWS_AS(competitive_ratio(1.0, 0.0), Error);
}

TEST_CASE("exact distance to vis(t) against the brute grid") {
  const auto t = one_peak();
  const Point2 target{3.5, -3};
  const double exact = geodesic_to_visibility_exact(t, target).length;
  double best = std::numeric_limits<double>::infinity();
  for (double x = -1; x <= 6; x += 0.005) {
    for (double y = t.height_at(x); y <= 5; y += 0.005) {
      if (sees(t, {x, y}, target)) best = std::min(best, brute_dist(t, {x, y}));
    }
  }
  CHECK(exact <= best + 1e-12);
  CHECK(exact >= best - 0.01);
}

TEST_CASE("horizon beyond the start does not steepen the boundary") {
  // t in a pit left of the start, a small lip at -1, a tall wall at +2
  const auto t = Terrain1D::from_vertices({{-4, 0}, {-3, -2}, {-2.5, -2}, {-1, 0.2}, {0, 0}, {2, 5}, {3, 5}});
  const Point2 target{-2.75, -2};
  const auto ray = visibility_boundary_ray(t, target);
  REQUIRE(ray);
  CHECK(ray->direction().y == doctest::Approx(2.2 / std::hypot(2.2, 1.75)));
  const double exact = geodesic_to_visibility_exact(t, target).length;
  CHECK(exact == doctest::Approx(2.55 / std::hypot(1.75, 2.2)));
  CHECK(exact == doctest::Approx(geodesic_to_ray(t, *ray).length));
}

TEST_CASE("exact and discretized oracles bracket each other on random terrains") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto inst = gen_random_1d(seed);
    double step = 0.0;
    const auto d = geodesic_to_visibility(inst.terrain, inst.target, DiscretizedOptions{}, &step);
    const double e = geodesic_to_visibility_exact(inst.terrain, inst.target.position).length;
    CHECK(d.length >= e - 1e-9);
    CHECK(d.length <= e + 2 * step);
  }
}
