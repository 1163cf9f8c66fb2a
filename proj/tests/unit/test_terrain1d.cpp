#include <random>

#include "doctest.h"
#include "tseek/error.hpp"
#include "tseek/terrain1d.hpp"

using namespace tseek;

namespace {

Terrain1D zigzag() { return Terrain1D::from_vertices({{-3, 1}, {-1, 2}, {0, 0}, {1, 3}, {2, -1}, {4, 2}}); }

// Dense-sampling oracle: the open segment stays on or above the terrain.
bool clear_by_sampling(const Terrain1D& t, Point2 a, Point2 b) {
  const int n = 20000;
  for (int k = 1; k < n; ++k) {
    const Point2 p = lerp(a, b, static_cast<double>(k) / n);
    if (p.y < t.height_at(p.x) - 1e-9) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("heights and flat extension") {
  const auto t = zigzag();
  CHECK(t.height_at(0.0) == 0.0);
  CHECK(t.height_at(0.5) == doctest::Approx(1.5));
  CHECK(t.height_at(3.0) == doctest::Approx(0.5));
  CHECK(t.height_at(-10.0) == doctest::Approx(1.0));
  CHECK(t.height_at(10.0) == doctest::Approx(2.0));
  CHECK(t.max_height() == doctest::Approx(3.0));
  CHECK(t.min_height() == doctest::Approx(-1.0));
}

TEST_CASE("start translation inserts an origin vertex") {
  const auto t = Terrain1D::from_vertices({{0, 5}, {2, 7}, {4, 5}}, 1.0);
  CHECK(t.height_at(0.0) == doctest::Approx(0.0));
  CHECK(t.height_at(1.0) == doctest::Approx(1.0));
  bool has_origin = false;
  for (const auto& v : t.vertices()) has_origin |= (v.x == 0.0 && v.y == 0.0);
  CHECK(has_origin);
}

TEST_CASE("invalid terrains are rejected") {
  CHECK_THROWS_AS(Terrain1D::from_vertices({{0, 0}, {0, 1}}), Error);
  CHECK_THROWS_AS(Terrain1D::from_vertices({{1, 0}, {0, 1}}), Error);
}

TEST_CASE("forward slope and convex vertices") {
  const auto t = zigzag();
  CHECK(t.forward_slope(0.0, 1) == doctest::Approx(3.0));
  CHECK(t.forward_slope(0.0, -1) == doctest::Approx(2.0));
  CHECK(t.forward_slope(1.5, -1) == doctest::Approx(4.0));
  const auto cv = t.convex_vertices();
  // slope drops at x=-1 (0.5 -> -2) and x=1 (3 -> -4)
  REQUIRE(cv.size() >= 2);
  bool m1 = false, p1 = false;
  for (const auto& v : cv) {
    m1 |= v.x == -1.0;
    p1 |= v.x == 1.0;
    CHECK(v.x != 0.0);
    CHECK(v.x != 2.0);
  }
  CHECK(m1);
  CHECK(p1);
}

TEST_CASE("segment_clear matches dense sampling") {
  const auto t = zigzag();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-4, 5), uy(0, 5);
  int agree = 0, total = 0;
  for (int k = 0; k < 300; ++k) {
    Point2 a{ux(rng), 0}, b{ux(rng), 0};
    a.y = t.height_at(a.x) + uy(rng) * 0.5;
    b.y = t.height_at(b.x) + uy(rng) * 0.5;
    if (std::abs(a.x - b.x) < 1e-3) continue;
    ++total;
    agree += t.segment_clear(a, b) == clear_by_sampling(t, a, b);
  }
  CHECK(agree == total);
}

TEST_CASE("touching does not block") {
  const auto t = zigzag();
  CHECK(t.segment_clear({0, 3}, {2, 3}));   // grazes the peak at (1,3)
  CHECK_FALSE(t.segment_clear({0, 2}, {2, 2}));
}
