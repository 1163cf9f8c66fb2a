#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "tseek/instances.hpp"
#include "tseek/strategy1d.hpp"
#include "tseek/strategy25d.hpp"

namespace tseek {

// Ratio bounds of the 1.5D strategy for a vertical ray at distance d_r
// behind a peak (case 1) and in the open (case 2).
double cstar_case1(double d_r, double s);
double cstar_case2(double s);

enum ReportFlag : unsigned {
  kFlagNone = 0,
  kFlagDegenerate = 1u << 0,   // opt <= kEpsGeom
  kFlagOptBounded = 1u << 1,   // opt is a bound, not exact
  kFlagRayStop = 1u << 2,      // stopped on the visibility ray
  kFlagTargetStop = 1u << 3,   // stopped on actual visibility of t
  kFlag25D = 1u << 4,
};
std::string flags_to_string(unsigned flags);

struct RatioReport {
  std::string instance_id;
  double tau = 0.0;
  double tau_star = 0.0;  // 2.5D: equals tau
  double opt = 0.0;
  double ratio = 0.0;
  double ratio_star = 0.0;
  unsigned flags = kFlagNone;
  std::string events;  // "kind:count" pairs
};

RatioReport evaluate(const Instance1D& inst, const StrategySpec1D& spec, SearchPath1D* path_out = nullptr);
RatioReport evaluate(const Instance25D& inst, const StrategySpec25D& spec, SearchPath3D* path_out = nullptr);

struct SweepTable {
  std::string param;
  std::vector<std::string> columns;  // columns[0] is the swept parameter
  std::vector<std::vector<double>> rows;
  std::size_t best_row = 0;          // argmax (d_r) or argmin (s, lambda) of the objective column
  std::size_t objective = 1;         // column the best row refers to
};

// cstar_case1 and cstar_case2 over d_r in [from, to] at slope s; best = argmax of case1.
SweepTable sweep_dr(double s, double from, double to, int steps);
// Worst case max(max_dr cstar_case1, cstar_case2) over s; best = argmin.
SweepTable sweep_s(double from, double to, int steps);
// Measured pit-grid ratios (farthest pit) over lambda; best = argmax ratio / sqrt(lambda).
SweepTable sweep_lambda(const std::vector<double>& lambdas, const StrategySpec25D& spec);

// d_r maximizing cstar_case1 on [0, 1], by golden-section search.
double argmax_case1(double s, double tol = 1e-12);

// Sup ratio of the guide path's horizontal projection used as a doubling
// line search, over targets 2^(i-3)(1 + 1e-6) on both sides, i in [i_lo, i_hi].
double line_search_sup_ratio(const StrategySpec1D& spec, int i_lo, int i_hi);

// Runs fn(0..n-1) on up to TERRAIN_SEEK_THREADS threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);
unsigned worker_count();

}  // namespace tseek
