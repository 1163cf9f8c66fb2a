#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tseek/oracle1d.hpp"
#include "tseek/terrain1d.hpp"
#include "tseek/terrain25d.hpp"

namespace tseek {

struct InstanceMeta {
  std::string generator;
  std::vector<std::pair<std::string, double>> params;
  std::uint64_t seed = 0;
};

struct Instance1D {
  std::string id;
  Terrain1D terrain;
  Target1D target;
  std::optional<VisRay> ray;  // present when the visibility region is bounded by a ray
  double opt_lower = 0.0;
  double opt_upper = 0.0;
  InstanceMeta meta;

  bool opt_exact() const { return opt_lower == opt_upper; }
};

struct Instance25D {
  std::string id;
  Terrain25D terrain;
  Point3 target;
  double opt_lower = 0.0;
  double opt_upper = 0.0;
  InstanceMeta meta;

  bool opt_exact() const { return opt_lower == opt_upper; }
};

// Steepness standing in for vertical pit walls.
inline constexpr double kSteep = 1e6;

// Narrow pit whose near wall sits just beyond x = d_r (d_r <= 2^(i-3)), so the
// visibility region is bounded by an almost vertical ray at distance d_r.
Instance1D gen_unobstructed_1d(int i, double d_r, double s);

// Steep peak with its apex on the second left guide segment at x = d_r, and a
// pit right behind it whose visibility ray runs through the apex.
Instance1D gen_peak_worstcase_1d(double d_r, double s);

// Pits at every nonzero integer in [-9d, 9d] plus a rectangular mountain of
// height d far to the right. One instance per pit, then the mountain target.
std::vector<Instance1D> gen_thm1_pits(int d, double mountain_distance = 0.0);

struct PitGrid {
  int k = 0;
  double delta = 0.0;
  double eps_pit = 0.0;
  double lambda = 0.0;
};

// k x k pyramid pits of slope lambda on a lattice turned 45 degrees against
// the raster; the start lies delta before pit (0, 0) along the lattice axis.
// Pit (a, b) defaults to the farthest one.
Instance25D gen_pit_grid_25d(double lambda, int pit_a = -1, int pit_b = -1, PitGrid* info = nullptr);
PitGrid pit_grid_params(double lambda);
Point2 pit_center(const PitGrid& g, int a, int b);
// Distance from p to {z >= (lambda / sqrt 2)(|dx| + |dy|) - depth} around apex_xy.
double point_to_pyramid_cone(Point3 p, Point2 apex_xy, double depth, double lambda);

// Pyramid mountain of slope lambda just right of the start; t at its far base.
Instance25D gen_single_cone_25d(double lambda, double height = 1.0);

// Lower bound: distance to the nearest lattice sample that sees t, less half a
// lattice diagonal. Upper bound: nearest such sample reachable in a straight
// line (infinity when none).
std::pair<double, double> sampled_opt_bounds(const Terrain25D& terrain, Point3 t);

Instance1D gen_random_1d(std::uint64_t seed, int n_vertices = 24, double slope_max = 2.0);
Instance25D gen_random_25d(std::uint64_t seed, int size = 33, double lambda_target = 4.0);

}  // namespace tseek
