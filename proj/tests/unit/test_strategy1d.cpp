#include <cmath>

#include "doctest.h"
#include "tseek/error.hpp"
#include "tseek/strategy1d.hpp"

using namespace tseek;

namespace {

// Guide path written out by hand, from the start up the stub: right segment s(2^i + x) on [-2^(i-2), 2^(i-1)],
// left segment s(2^i - x) on [-2^(i-1), 2^(i-2)].
std::vector<Point2> hand_guide(double s, int i0, int last) {
  std::vector<Point2> v{{0.0, 0.0}, {0.0, s * std::ldexp(1.0, i0)}};
  for (int i = i0; i <= last; ++i) {
    const double p = std::ldexp(1.0, i);
    const bool right = (i % 2 + 2) % 2 == 1;
    const double x = right ? p / 2 : -p / 2;
    v.push_back({x, right ? s * (p + x) : s * (p - x)});
  }
  return v;
}

// Arc length along a polyline to the first point with x beyond a vertical line at d (d > 0).
double first_reach(const std::vector<Point2>& v, double d) {
  double len = 0.0;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    const Point2 a = v[k], b = v[k + 1];
    if (b.x > d && a.x <= d) {
      const double u = (d - a.x) / (b.x - a.x);
      return len + u * distance(a, b);
    }
    len += distance(a, b);
  }
  return -1.0;
}

}  // namespace

TEST_CASE("guide path continuity and heights") {
  const double s = std::sqrt(2.0) / 6.0;
  const ProjectedPath pp(s, 1e-3);
  CHECK(pp.first_index() == -9);
  for (int i = pp.first_index(); i < 12; ++i) {
    const Point2 end = pp.turning_point(i);
    CHECK(pp.height(i + 1, end.x) == doctest::Approx(end.y).epsilon(1e-12));
    CHECK(end.y == doctest::Approx(1.5 * s * std::ldexp(1.0, i)));
  }
  const auto poly = pp.polyline(8);
  const auto hand = hand_guide(s, pp.first_index(), 8);
  REQUIRE(poly.size() == hand.size());
  for (std::size_t k = 0; k < hand.size(); ++k) {
    CHECK(poly[k].x == doctest::Approx(hand[k].x));
    CHECK(poly[k].y == doctest::Approx(hand[k].y));
  }
}

TEST_CASE("slope validation") {
  StrategySpec1D sp;
  sp.s = 0.5;
  CHECK_THROWS_AS(sp.validate(), Error);
  sp.allow_any_slope = true;
  CHECK_NOTHROW(sp.validate());
  sp.s = 0.3;
  sp.allow_any_slope = false;
  CHECK_NOTHROW(sp.validate());
}

TEST_CASE("flat terrain: path follows the guide") {
  StrategySpec1D sp;
  sp.eps0 = 1.0 / 64;
  const auto flat = Terrain1D::flat(100.0);
  const auto path = build_search_path(flat, sp, StopCondition::ray(VisRay::vertical({5.0, 0.0})));
  const ProjectedPath pp(sp.s, sp.eps0);
  const auto hand = hand_guide(sp.s, pp.first_index(), 6);
  // independent arc length to the vertical line x = 5 along the hand guide
  const double expect = first_reach(hand, 5.0);
  CHECK(path.stopped);
  CHECK(path.tau == doctest::Approx(expect).epsilon(1e-9));
  CHECK(path.p_t.x == doctest::Approx(5.0));
}

TEST_CASE("path stays above the terrain, y never decreases, tau <= tau*") {
  const auto t = Terrain1D::from_vertices({{-6, 2}, {-2, 0.5}, {0, 0}, {0.3, 0.6}, {1, 0.2}, {3, 2.5}, {7, 0}});
  StrategySpec1D sp;
  sp.eps0 = 1e-3;
  const auto path = build_search_path(t, sp, StopCondition::length(60.0));
  const auto& v = path.polyline.vertices();
  for (std::size_t k = 0; k < v.size(); ++k) {
    CHECK(t.is_above(v[k]));
    if (k) CHECK(v[k].y >= v[k - 1].y - 1e-12);
    CHECK(path.polyline.cumulative_length()[k] <= tau_star(sp, v[k].y) + 1e-9);
    if (k) {
      for (int j = 1; j < 20; ++j) CHECK(t.is_above(lerp(v[k - 1], v[k], j / 20.0)));
    }
  }
}

TEST_CASE("budget exceeded") {
  StrategySpec1D sp;
  sp.budget = 1.0;
  CHECK_THROWS_AS(build_search_path(Terrain1D::flat(), sp, StopCondition::ray(VisRay::vertical({50.0, 0.0}))), Error);
}

TEST_CASE("cross_ray on a simple polyline") {
  Polyline2 p({0, 0});
  p.push_back({0, 1});
  p.push_back({4, 1});
  const auto c = cross_ray(p, VisRay::vertical({2.0, -1.0}));
  CHECK(c.p_t.x == doctest::Approx(2.0));
  CHECK(c.tau == doctest::Approx(3.0));
  CHECK_THROWS_AS(cross_ray(p, VisRay::vertical({9.0, 0.0})), Error);
}
