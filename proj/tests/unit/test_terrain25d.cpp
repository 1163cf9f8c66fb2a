#include <cmath>
#include <random>

#include "doctest.h"
#include "tseek/error.hpp"
#include "tseek/terrain25d.hpp"

using namespace tseek;

namespace {

// 3x3 raster on [-1,1]^2, centre 0.
Terrain25D small() { return Terrain25D::from_raster({1, 2, 0, -1, 0, 3, 2, 1, 4}, 3, 3, 1.0, {-1, -1}); }

Terrain25D bumpy(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> h(9 * 9);
  for (auto& v : h) v = u(rng);
  return Terrain25D::from_raster(h, 9, 9, 0.5, {-2, -2});
}

double bilinear(double h00, double h10, double h01, double h11, double fx, double fy) {
  return h00 * (1 - fx) * (1 - fy) + h10 * fx * (1 - fy) + h01 * (1 - fx) * fy + h11 * fx * fy;
}

bool clear_by_sampling(const Terrain25D& t, Point3 a, Point3 b) {
  for (int k = 1; k < 5000; ++k) {
    const Point3 p = lerp(a, b, k / 5000.0);
    if (p.z < t.height_at(p.x, p.y) - 1e-9) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("bilinear interpolation and clamping") {
  const auto t = small();
  CHECK(t.height_at(0, 0) == 0.0);
  CHECK(t.node(0, 0) == doctest::Approx(1.0));
  CHECK(t.height_at(0.5, 0.5) == doctest::Approx(bilinear(0, 3, 1, 4, 0.5, 0.5)));
  CHECK(t.height_at(-0.25, 0.75) == doctest::Approx(bilinear(-1, 0, 2, 1, 0.75, 0.75)));
  CHECK(t.height_at(5, 5) == doctest::Approx(4.0));
  CHECK(t.height_at(-5, 0.5) == doctest::Approx(0.5));
  CHECK(t.max_height() == 4.0);
  CHECK(t.min_height() == -1.0);
}

TEST_CASE("origin shift") {
  const auto t = Terrain25D::from_raster({5, 5, 5, 5, 7, 5, 5, 5, 5}, 3, 3, 1.0, {-1, -1});
  CHECK(t.height_at(0, 0) == doctest::Approx(0.0));
  CHECK(t.node(0, 0) == doctest::Approx(-2.0));
}

TEST_CASE("lipschitz of a plane") {
  std::vector<double> h;
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) h.push_back(3.0 * (c - 2) - 4.0 * (r - 2));
  const auto t = Terrain25D::from_raster(h, 5, 5, 1.0, {-2, -2});
  CHECK(t.lipschitz() == doctest::Approx(5.0));
}

TEST_CASE("lipschitz bounds sampled slopes") {
  const auto t = bumpy(3);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  double worst = 0.0;
  for (int k = 0; k < 20000; ++k) {
    const Point2 a{u(rng), u(rng)}, b{u(rng), u(rng)};
    if (distance(a, b) < 1e-6) continue;
    worst = std::max(worst, std::abs(t.height_at(a) - t.height_at(b)) / distance(a, b));
  }
  CHECK(worst <= t.lipschitz() + 1e-9);
  CHECK(worst >= 0.5 * t.lipschitz());
}

TEST_CASE("min_height_in_rect against dense sampling") {
  const auto t = bumpy(5);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  for (int k = 0; k < 40; ++k) {
    double x0 = u(rng), x1 = u(rng), y0 = u(rng), y1 = u(rng);
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    double m = 1e300;
    for (int a = 0; a <= 200; ++a)
      for (int b = 0; b <= 200; ++b) m = std::min(m, t.height_at(x0 + (x1 - x0) * a / 200, y0 + (y1 - y0) * b / 200));
    const double got = t.min_height_in_rect({x0, y0, x1, y1});
    // the sampler can miss the true minimum by at most lambda times half a sample diagonal
    const double slack = t.lipschitz() * std::hypot(x1 - x0, y1 - y0) / 400;
    CHECK(got <= m + 1e-12);
    CHECK(got >= m - slack);
  }
}

TEST_CASE("segment_clear against dense sampling") {
  const auto t = bumpy(7);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-2.2, 2.2), dz(0.0, 1.0);
  int total = 0, agree = 0;
  for (int k = 0; k < 400; ++k) {
    Point3 a{u(rng), u(rng), 0}, b{u(rng), u(rng), 0};
    a.z = t.height_at(a.x, a.y) + dz(rng);
    b.z = t.height_at(b.x, b.y) + dz(rng);
    ++total;
    agree += t.segment_clear(a, b) == clear_by_sampling(t, a, b);
  }
  CHECK(agree == total);
}

TEST_CASE("sees3d") {
  std::vector<double> h(25, 0.0);
  h[3 * 5 + 2] = 5.0;  // bump at (0, 1)
  const auto t = Terrain25D::from_raster(h, 5, 5, 1.0, {-2, -2});
  CHECK_FALSE(sees3d(t, {0, -1, 0.0}, {0, 2, 0.0}));
  CHECK(sees3d(t, {1, -1, 0.0}, {1, 2, 0.0}));
  CHECK(sees3d(t, {0, -1, 6.0}, {0, 2, 6.0}));
  CHECK_THROWS_AS(sees3d(t, {0, 1, 1.0}, {1, 1, 0.0}), Error);
}
