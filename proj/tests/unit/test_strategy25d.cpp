#include <cmath>
#include <set>

#include "doctest.h"
#include "tseek/error.hpp"
#include "tseek/instances.hpp"
#include "tseek/strategy25d.hpp"

using namespace tseek;

TEST_CASE("grid_spec picks the smallest admissible k") {
  for (double lambda : {0.01, 0.5, 1.0, 4.0, 16.0, 100.0}) {
    const double x = 0.25;
    int k = 0;
    while (2 * x / (2 * k + 1) > x / (2 * std::sqrt(2 * lambda))) ++k;
    const auto g = grid_spec(lambda, x, 1e-3);
    CHECK(g.k == k);
    CHECK(g.cells_per_side == 2 * k + 1);
    CHECK(g.cell_side == doctest::Approx(2 * x / (2 * k + 1)));
    CHECK(g.height == doctest::Approx((2 * x - 1e-3) * std::sqrt(lambda)));
  }
}

TEST_CASE("cell geometry") {
  const auto g = grid_spec(4.0, 1.0, 1e-3);
  const auto c = cell_center(g, {g.k, g.k});
  CHECK(c.x == doctest::Approx(0.0));
  CHECK(c.y == doctest::Approx(0.0));
  const auto r = cell_rect(g, {0, 0});
  CHECK(r.x0 == doctest::Approx(-1.0));
  CHECK(r.x1 - r.x0 == doctest::Approx(g.cell_side));
}

TEST_CASE("flat terrain: full component, tree tour") {
  const auto t = Terrain25D::flat(4.0, 0.5);
  const auto g = grid_spec(4.0, 1.0, 1e-3);
  const auto comp = eligible_component(t, g);
  const int n = g.cells_per_side;
  CHECK(comp.size() == static_cast<std::size_t>(n * n));
  const auto tour = component_tour(comp, g);
  CHECK(tour.front() == Cell{g.k, g.k});
  CHECK(tour.back() == Cell{g.k, g.k});
  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 0; k < tour.size(); ++k) {
    seen.insert({tour[k].i, tour[k].j});
    if (k) CHECK(std::abs(tour[k].i - tour[k - 1].i) + std::abs(tour[k].j - tour[k - 1].j) == 1);
  }
  CHECK(seen.size() == comp.size());
  // each spanning-tree edge walked twice
  CHECK(tour_length(tour, g) == doctest::Approx(2.0 * (n * n - 1) * g.cell_side));
}

TEST_CASE("disconnected input is rejected") {
  const auto g = grid_spec(4.0, 1.0, 1e-3);
  std::vector<Cell> cells{{g.k, g.k}, {0, 0}};
  CHECK_THROWS_AS(component_tour(cells, g), Error);
}

TEST_CASE("2.5D path on a pit grid") {
  const auto inst = gen_pit_grid_25d(16.0, 0, 0);
  StrategySpec25D sp;
  const auto path = build_path_25d(inst.terrain, sp, inst.target);
  CHECK(path.stopped);
  // p_t lies on the visibility boundary: the sight line may graze the rim, never cut it
  double worst = 1.0;
  for (int k = 1; k < 20000; ++k) {
    const Point3 q = lerp(path.p_t, inst.target, k / 20000.0);
    worst = std::min(worst, q.z - inst.terrain.height_at(q.x, q.y));
  }
  CHECK(worst >= -1e-8);
  const auto& v = path.polyline.vertices();
  for (std::size_t k = 0; k < v.size(); ++k) {
    CHECK(inst.terrain.is_above(v[k]));
    if (k) CHECK(v[k].z >= v[k - 1].z - 1e-12);
  }
  CHECK(path.tau >= inst.opt_lower);
  CHECK(path.tau == doctest::Approx(path.polyline.cumulative_length().back()));
}

TEST_CASE("flat terrain is degenerate") {
  CHECK_THROWS_AS(build_path_25d(Terrain25D::flat(2.0), StrategySpec25D{}, {1, 1, 0}), Error);
}
