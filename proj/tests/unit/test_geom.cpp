#include "doctest.h"
#include "tseek/error.hpp"
#include "tseek/geom.hpp"

using namespace tseek;

TEST_CASE("orient signs") {
  CHECK(orient({0, 0}, {1, 0}, {0, 1}) == Orientation::Left);
  CHECK(orient({0, 0}, {1, 0}, {0, -1}) == Orientation::Right);
  CHECK(orient({0, 0}, {1, 1}, {3, 3}) == Orientation::Collinear);
  // large coordinates, tiny relative offset
  CHECK(orient({1e6, 1e6}, {2e6, 2e6}, {3e6, 3e6 + 1e-6}) == Orientation::Collinear);
}

TEST_CASE("seg_intersect proper and touching") {
  auto x = seg_intersect({{0, 0}, {2, 2}}, {{0, 2}, {2, 0}});
  REQUIRE(x);
  CHECK(x->point.x == doctest::Approx(1.0));
  CHECK(x->point.y == doctest::Approx(1.0));
  CHECK_FALSE(x->touching);

  auto t = seg_intersect({{0, 0}, {1, 0}}, {{1, 0}, {1, 1}});
  REQUIRE(t);
  CHECK(t->touching);

  auto c = seg_intersect({{0, 0}, {2, 0}}, {{1, 0}, {3, 0}});
  REQUIRE(c);
  CHECK(c->touching);

  CHECK_FALSE(seg_intersect({{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}));
}

TEST_CASE("seg_intersect rejects degenerate segments") {
  try {
    seg_intersect({{1, 1}, {1, 1}}, {{0, 0}, {2, 2}});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateSegment);
  }
}

TEST_CASE("first_param_on_segment") {
  const double u = first_param_on_segment([](double v) { return v >= 0.3141; }, 1e-12);
  CHECK(u == doctest::Approx(0.3141).epsilon(1e-10));
  CHECK(first_param_on_segment([](double) { return true; }) == 0.0);
  try {
    first_param_on_segment([](double) { return false; });
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoFlip);
  }
}

TEST_CASE("polyline cumulative length") {
  Polyline2 p({0, 0});
  p.push_back({3, 4});
  p.push_back({3, 5});
  CHECK(p.length() == doctest::Approx(6.0));
  CHECK(p.cumulative_length()[1] == doctest::Approx(5.0));
}
