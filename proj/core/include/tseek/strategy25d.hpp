#pragma once

#include <string_view>
#include <vector>

#include "tseek/geom.hpp"
#include "tseek/terrain25d.hpp"

namespace tseek {

struct GridSpec {
  double x = 0.0;  // half side; the grid covers [-x, x]^2
  int k = 0;
  int cells_per_side = 1;
  double cell_side = 0.0;
  double height = 0.0;             // (2x - eps0) sqrt(lambda)
  double height_simplified = 0.0;  // 2x sqrt(lambda)
};

GridSpec grid_spec(double lambda, double x, double eps0);

// Cell (i, j): column i, row j, both in [0, 2k]. The start cell is (k, k).
struct Cell {
  int i = 0;
  int j = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

Rect cell_rect(const GridSpec& g, Cell c);
Point2 cell_center(const GridSpec& g, Cell c);

// 4-connected component of eligible cells holding the start cell, sorted by
// (row, column).
std::vector<Cell> eligible_component(const Terrain25D& terrain, const GridSpec& g);

// Depth-first walk of a spanning tree of the cells, neighbours taken in
// (row, column) order. Starts and ends at the start cell and lists every
// cell entered, backtracking included.
std::vector<Cell> component_tour(const std::vector<Cell>& cells, const GridSpec& g);
double tour_length(const std::vector<Cell>& tour, const GridSpec& g);

struct StrategySpec25D {
  double eps0 = 1e-3;
  double budget = 1e5;
  double lambda_override = 0.0;  // > 0 replaces the terrain's own lambda
  double vis_step = 0.0;         // sees3d sample step; <= 0 uses raster spacing / 4
};

enum class Event25Kind { AscendTo, GridStart, VisitCell, Lift, GridEnd, Stop };
std::string_view to_string(Event25Kind kind);

struct PathEvent25 {
  Event25Kind kind;
  std::size_t vertex;  // polyline vertex the event is attached to
  double value = 0.0;  // AscendTo: height, GridStart/GridEnd: x, Lift: dz
  Cell cell{};
};

// Per-grid measurements, used by the acceptance checks.
struct GridRecord {
  GridSpec grid;
  std::size_t component_size = 0;
  double horizontal_length = 0.0;  // walked during the tour
  double lift = 0.0;           // z gained during the tour
  double z_before = 0.0;       // z on arrival, before ascending
  double path_length_at_grid = 0.0;  // arc length when the grid height is reached
  bool completed = false;
};

struct SearchPath3D {
  Polyline3 polyline;
  std::vector<PathEvent25> events;
  double total_length = 0.0;
  bool stopped = false;
  Point3 p_t;
  double tau = 0.0;
  double lambda = 0.0;
  std::vector<GridRecord> grids;
};

// Throws DegenerateFlat when lambda is zero and BudgetExceeded when t is not
// seen within the budget.
SearchPath3D build_path_25d(const Terrain25D& terrain, const StrategySpec25D& spec, Point3 t);

}  // namespace tseek
