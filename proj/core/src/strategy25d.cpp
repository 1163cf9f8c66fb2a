#include "tseek/strategy25d.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "tseek/error.hpp"

namespace tseek {

GridSpec grid_spec(double lambda, double x, double eps0) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Error(ErrorCode::InvalidParam, "lambda must be positive");
  if (!(eps0 > 0.0) || !(x >= eps0) || !std::isfinite(x)) throw Error(ErrorCode::InvalidParam, "need x >= eps0 > 0");
  GridSpec g;
  g.x = x;
  const double need = 4.0 * std::sqrt(2.0 * lambda);
  g.k = std::max(0, static_cast<int>(std::ceil((need - 1.0) / 2.0 - 1e-12)));
  g.cells_per_side = 2 * g.k + 1;
  g.cell_side = 2.0 * x / g.cells_per_side;
  g.height = (2.0 * x - eps0) * std::sqrt(lambda);
  g.height_simplified = 2.0 * x * std::sqrt(lambda);
  return g;
}

Rect cell_rect(const GridSpec& g, Cell c) {
  const double x0 = -g.x + c.i * g.cell_side;
  const double y0 = -g.x + c.j * g.cell_side;
  return {x0, y0, x0 + g.cell_side, y0 + g.cell_side};
}

Point2 cell_center(const GridSpec& g, Cell c) {
  return {-g.x + (c.i + 0.5) * g.cell_side, -g.x + (c.j + 0.5) * g.cell_side};
}

namespace {

// Neighbours in (row, column) order.
constexpr int kNbr[4][2] = {{0, -1}, {-1, 0}, {1, 0}, {0, 1}};

bool cell_less(const Cell& a, const Cell& b) { return a.j < b.j || (a.j == b.j && a.i < b.i); }

}  // namespace

std::vector<Cell> eligible_component(const Terrain25D& terrain, const GridSpec& g) {
  const int n = g.cells_per_side;
  const double limit = g.height + kEpsGeom * std::max(1.0, g.height);
  std::vector<signed char> state(n * n, -1);  // -1 unknown, 0 ineligible, 1 eligible
  auto eligible = [&](int i, int j) {
    auto& s = state[j * n + i];
    if (s < 0) s = terrain.min_height_in_rect(cell_rect(g, {i, j})) <= limit ? 1 : 0;
    return s == 1;
  };
  std::vector<bool> seen(n * n, false);
  std::vector<Cell> out;
  std::vector<Cell> stack{{g.k, g.k}};
  seen[g.k * n + g.k] = true;
  while (!stack.empty()) {
    const Cell c = stack.back();
    stack.pop_back();
    out.push_back(c);
    for (const auto& d : kNbr) {
      const int i = c.i + d[0], j = c.j + d[1];
      if (i < 0 || j < 0 || i >= n || j >= n || seen[j * n + i]) continue;
      if (!eligible(i, j)) continue;
      seen[j * n + i] = true;
      stack.push_back({i, j});
    }
  }
  std::sort(out.begin(), out.end(), cell_less);
  return out;
}

std::vector<Cell> component_tour(const std::vector<Cell>& cells, const GridSpec& g) {
  const Cell root{g.k, g.k};
  std::map<std::pair<int, int>, bool> visited;
  for (const auto& c : cells) visited[{c.j, c.i}] = false;
  if (!visited.count({root.j, root.i})) throw Error(ErrorCode::DisconnectedInput, "component lacks the start cell");

  std::vector<Cell> tour{root};
  visited[{root.j, root.i}] = true;
  std::size_t reached = 1;
  // Iterative DFS: each frame remembers the next neighbour to try.
  std::vector<std::pair<Cell, int>> stack{{root, 0}};
  while (!stack.empty()) {
    auto& [c, next] = stack.back();
    bool descended = false;
    while (next < 4) {
      const Cell nb{c.i + kNbr[next][0], c.j + kNbr[next][1]};
      ++next;
      auto it = visited.find({nb.j, nb.i});
      if (it == visited.end() || it->second) continue;
      it->second = true;
      ++reached;
      tour.push_back(nb);
      stack.push_back({nb, 0});
      descended = true;
      break;
    }
    if (descended) continue;
    stack.pop_back();
    if (!stack.empty()) tour.push_back(stack.back().first);
  }
  if (reached != visited.size()) throw Error(ErrorCode::DisconnectedInput, "cells are not 4-connected");
  return tour;
}

double tour_length(const std::vector<Cell>& tour, const GridSpec& g) {
  double len = 0.0;
  for (std::size_t k = 1; k < tour.size(); ++k) len += distance(cell_center(g, tour[k - 1]), cell_center(g, tour[k]));
  return len;
}

std::string_view to_string(Event25Kind kind) {
  switch (kind) {
    case Event25Kind::AscendTo: return "ascend";
    case Event25Kind::GridStart: return "grid_start";
    case Event25Kind::VisitCell: return "visit_cell";
    case Event25Kind::Lift: return "lift";
    case Event25Kind::GridEnd: return "grid_end";
    case Event25Kind::Stop: return "stop";
  }
  return "unknown";
}

namespace {

class Walker3D {
 public:
  Walker3D(const Terrain25D& terrain, Point3 t, double vis_step, double budget, SearchPath3D& path)
      : terrain_(terrain), t_(t), vis_step_(vis_step), budget_(budget), path_(path) {
    path_.polyline.push_back({0.0, 0.0, 0.0});
  }

  void set_check_step(double step) { check_step_ = step; }
  Point3 position() const { return path_.polyline.back(); }
  bool stopped() const { return path_.stopped; }

  void mark(Event25Kind kind, double value = 0.0, Cell cell = {}) {
    path_.events.push_back({kind, path_.polyline.size() - 1, value, cell});
  }

  bool sees(Point3 p) const { return sees3d(terrain_, p, t_, vis_step_); }

  void finish(Point3 q) {
    if (distance(position(), q) > 0.0) path_.polyline.push_back(q);
    mark(Event25Kind::Stop);
    path_.stopped = true;
    path_.p_t = q;
    path_.tau = path_.polyline.length();
  }

  // Straight move with visibility checks every check_step and at p.
  bool move_to(Point3 p) {
    if (path_.stopped) return true;
    const Point3 a = position();
    const double len = distance(a, p);
    if (len <= 0.0) return false;
    const double before = path_.polyline.length();
    const long n = std::max(1L, static_cast<long>(std::ceil(len / check_step_)));
    double u_prev = 0.0;
    for (long k = 1; k <= n; ++k) {
      const double u = static_cast<double>(k) / static_cast<double>(n);
      if (before + u * len > budget_) break;
      if (sees(lerp(a, p, u))) {
        const double span = u - u_prev;
        const double v = first_param_on_segment([&](double w) { return sees(lerp(a, p, u_prev + w * span)); });
        finish(lerp(a, p, u_prev + v * span));
        return true;
      }
      u_prev = u;
    }
    if (before + len > budget_) throw Error(ErrorCode::BudgetExceeded, "target not seen within the length budget");
    path_.polyline.push_back(p);
    return false;
  }

  // Axis-parallel horizontal move to dest. z follows the running maximum of
  // the terrain; along such a line the bilinear surface is piecewise linear
  // with breaks at raster lines, so the lifting is exact.
  bool horizontal_move(Point2 dest) {
    const Point3 a = position();
    const Point2 a2{a.x, a.y};
    std::vector<double> us;
    auto crossings = [&](double from, double to, double org, std::size_t n) {
      if (from == to) return;
      for (std::size_t k = 0; k < n; ++k) {
        const double u = (org + static_cast<double>(k) * terrain_.spacing() - from) / (to - from);
        if (u > 0.0 && u < 1.0) us.push_back(u);
      }
    };
    crossings(a.x, dest.x, terrain_.origin().x, terrain_.cols());
    crossings(a.y, dest.y, terrain_.origin().y, terrain_.rows());
    std::sort(us.begin(), us.end());
    us.push_back(1.0);

    double z = a.z;
    double u_prev = 0.0;
    double h_prev = terrain_.height_at(a2);
    for (double u : us) {
      const Point2 p = lerp(a2, dest, u);
      const double h = terrain_.height_at(p);
      if (h > z + terrain_.height_tolerance({p.x, p.y, z})) {
        if (h_prev < z) {
          const double uc = u_prev + (u - u_prev) * (z - h_prev) / (h - h_prev);
          const Point2 c = lerp(a2, dest, uc);
          if (move_to({c.x, c.y, z})) return true;
        }
        if (move_to({p.x, p.y, h})) return true;
        z = h;
      }
      u_prev = u;
      h_prev = h;
    }
    if (move_to({dest.x, dest.y, z})) return true;
    if (z > a.z) mark(Event25Kind::Lift, z - a.z);
    return false;
  }

 private:
  const Terrain25D& terrain_;
  Point3 t_;
  double vis_step_;
  double budget_;
  double check_step_ = 1.0;
  SearchPath3D& path_;
};

}  // namespace

SearchPath3D build_path_25d(const Terrain25D& terrain, const StrategySpec25D& spec, Point3 t) {
  const double lambda = spec.lambda_override > 0.0 ? spec.lambda_override : terrain.lipschitz();
  if (!(lambda > kEpsGeom)) throw Error(ErrorCode::DegenerateFlat, "terrain is flat; lambda must be positive");
  if (!(spec.eps0 > 0.0) || !(spec.budget > 0.0)) throw Error(ErrorCode::InvalidSpec, "eps0 and budget must be positive");
  if (!terrain.is_above(t)) throw Error(ErrorCode::PointBelowTerrain, "target below the terrain");

  SearchPath3D path;
  path.lambda = lambda;
  Walker3D walk(terrain, t, spec.vis_step, spec.budget, path);
  if (walk.sees({0.0, 0.0, 0.0})) {
    walk.finish({0.0, 0.0, 0.0});
  }
  for (double x = spec.eps0; !walk.stopped(); x *= 2.0) {
    const GridSpec g = grid_spec(lambda, x, spec.eps0);
    walk.set_check_step(g.cell_side / 4.0);
    GridRecord rec;
    rec.grid = g;
    rec.z_before = walk.position().z;
    if (rec.z_before < g.height) {
      walk.mark(Event25Kind::AscendTo, g.height);
      if (walk.move_to({0.0, 0.0, g.height})) break;
    }
    rec.path_length_at_grid = path.polyline.length();
    walk.mark(Event25Kind::GridStart, x);

    const auto component = eligible_component(terrain, g);
    const auto tour = component_tour(component, g);
    rec.component_size = component.size();
    const double z0 = walk.position().z;
    const std::size_t first = path.polyline.size() - 1;
    bool stop = false;
    for (std::size_t k = 1; k < tour.size() && !stop; ++k) {
      stop = walk.horizontal_move(cell_center(g, tour[k]));
      if (!stop) walk.mark(Event25Kind::VisitCell, 0.0, tour[k]);
    }
    rec.lift = walk.position().z - z0;
    for (std::size_t v = first + 1; v < path.polyline.size(); ++v) {
      const Point3 d = path.polyline[v] - path.polyline[v - 1];
      rec.horizontal_length += std::hypot(d.x, d.y);
    }
    rec.completed = !stop;
    path.grids.push_back(rec);
    if (stop) break;
    walk.mark(Event25Kind::GridEnd, x);
  }
  path.total_length = path.polyline.length();
  return path;
}

}  // namespace tseek
