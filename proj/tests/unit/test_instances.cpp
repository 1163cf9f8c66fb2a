#include <cmath>

#include "doctest.h"
#include "tseek/error.hpp"
#include "tseek/instances.hpp"
#include "tseek/oracle1d.hpp"

using namespace tseek;

namespace {

// Brute-force distance to the surface z = c(|u| + |v|) - depth: coarse grid,
// then a shrinking local search.
double brute_cone(Point3 p, Point2 apex, double depth, double lambda) {
  const double c = lambda / std::sqrt(2.0);
  const Point3 q{p.x - apex.x, p.y - apex.y, p.z};
  if (q.z >= c * (std::abs(q.x) + std::abs(q.y)) - depth) return 0.0;
  auto d = [&](double u, double v) { return norm(Point3{u, v, c * (std::abs(u) + std::abs(v)) - depth} - q); };
  double bu = 0, bv = 0, best = d(0, 0);
  const double r = norm(q) + depth;
  for (int a = -200; a <= 200; ++a)
    for (int b = -200; b <= 200; ++b) {
      const double u = r * a / 200, v = r * b / 200, x = d(u, v);
      if (x < best) best = x, bu = u, bv = v;
    }
  for (double h = r / 100; h > 1e-12; h *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (auto [du, dv] : {std::pair{h, 0.0}, {-h, 0.0}, {0.0, h}, {0.0, -h}, {h, h}, {-h, -h}, {h, -h}, {-h, h}}) {
        const double x = d(bu + du, bv + dv);
        if (x < best) best = x, bu += du, bv += dv, moved = true;
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("point_to_pyramid_cone against brute force") {
  const Point2 apex{0.3, -0.2};
  for (double lambda : {1.0, 4.0, 16.0}) {
    for (const Point3 p : {Point3{0, 0, 0}, Point3{1, 0.2, -0.1}, Point3{0.3, 1.5, 0.0}, Point3{-0.7, -0.9, 0.2},
                           Point3{0.3, -0.2, -2.0}}) {
      const double got = point_to_pyramid_cone(p, apex, 0.25, lambda);
      CHECK(got == doctest::Approx(brute_cone(p, apex, 0.25, lambda)).epsilon(1e-7));
    }
  }
}

TEST_CASE("unobstructed instance") {
  const auto inst = gen_unobstructed_1d(5, 1.0, std::sqrt(2.0) / 6);
  REQUIRE(inst.ray);
  CHECK(inst.opt_exact());
  CHECK(inst.opt_lower == doctest::Approx(inst.ray->distance_to_start()));
  CHECK(inst.opt_lower == doctest::Approx(1.0).epsilon(1e-4));
  CHECK_FALSE(sees(inst.terrain, {0, 0}, inst.target.position));
  CHECK(geodesic_to_ray(inst.terrain, *inst.ray).length == doctest::Approx(inst.opt_lower));
}

TEST_CASE("peak worst case opt is the apex distance") {
  const auto inst = gen_peak_worstcase_1d(0.3, std::sqrt(2.0) / 6);
  REQUIRE(inst.ray);
  CHECK(geodesic_to_ray(inst.terrain, *inst.ray).length == doctest::Approx(inst.opt_lower).epsilon(1e-9));
}

TEST_CASE("two-sided pit family") {
  const auto fam = gen_thm1_pits(2);
  CHECK(fam.size() == 18u * 2 + 1);
  for (const auto& inst : fam) {
    CHECK(inst.opt_exact());
    CHECK(inst.opt_lower > 0.0);
  }
}

TEST_CASE("pit grid") {
  PitGrid g;
  const auto inst = gen_pit_grid_25d(64.0, -1, -1, &g);
  CHECK(g.k == 4);
  CHECK(inst.terrain.lipschitz() == doctest::Approx(64.0));
  const Point2 c = pit_center(g, g.k - 1, g.k - 1);
  CHECK(inst.terrain.height_at(c) == doctest::Approx(-g.eps_pit));
  CHECK(inst.target.z == doctest::Approx(-g.eps_pit));
  CHECK(inst.opt_lower == doctest::Approx(point_to_pyramid_cone({0, 0, 0}, c, g.eps_pit, 64.0)));
  CHECK_THROWS_AS(gen_pit_grid_25d(64.0, 7, 0), Error);
}

TEST_CASE("random families") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto a = gen_random_1d(seed);
    CHECK(a.opt_lower <= a.opt_upper + 1e-9);
    CHECK_FALSE(sees(a.terrain, {0, 0}, a.target.position));
    const auto b = gen_random_1d(seed);
    CHECK(a.opt_upper == b.opt_upper);  // deterministic
  }
  const auto r = gen_random_25d(2, 17, 4.0);
  CHECK(r.terrain.lipschitz() == doctest::Approx(4.0));
  CHECK(r.opt_lower <= r.opt_upper);
}
