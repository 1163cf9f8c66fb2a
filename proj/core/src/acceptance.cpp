#include "tseek/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "tseek/evaluation.hpp"
#include "tseek/regression_constants.hpp"

namespace tseek {

std::string format_line(const CriterionResult& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, " (%.2f s)", r.seconds);
  return std::string(r.pass ? "PASS " : "FAIL ") + (r.id < 10 ? " " : "") + std::to_string(r.id) + " " + r.name +
         ": " + r.detail + buf;
}

namespace {

const double kOptimalRatio = 3.0 * std::sqrt(19.0 / 2.0);  // 9.246621...

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

struct Run25 {
  std::string id;
  double lambda = 0.0;
  SearchPath3D path;
  RatioReport report;
};

struct Context {
  StrategySpec1D spec1;
  StrategySpec25D spec25;
  std::vector<RatioReport> reports1d;
  std::vector<Instance1D> random1d;
  std::vector<Run25> runs25;
  // worst pit-grid ratio per lambda
  std::vector<std::pair<double, double>> family_worst;
  double family_seconds = 0.0;
  RegressionMeasurement measured;
};

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const std::vector<double> kLambdas{16.0, 64.0, 256.0};

void run_pit_families(Context& ctx) {
  const auto t0 = Clock::now();
  for (double lambda : kLambdas) {
    const PitGrid g = pit_grid_params(lambda);
    std::vector<Run25> runs(static_cast<std::size_t>(g.k * g.k));
    parallel_for(runs.size(), [&](std::size_t n) {
      const auto inst = gen_pit_grid_25d(lambda, static_cast<int>(n) / g.k, static_cast<int>(n) % g.k);
      runs[n].id = inst.id;
      runs[n].lambda = lambda;
      runs[n].report = evaluate(inst, ctx.spec25, &runs[n].path);
    });
    double worst = 0.0;
    for (auto& r : runs) {
      worst = std::max(worst, r.report.ratio);
      ctx.runs25.push_back(std::move(r));
    }
    ctx.family_worst.push_back({lambda, worst});
  }
  ctx.family_seconds = since(t0);
}

void run_other_25d(Context& ctx) {
  std::vector<Instance25D> insts;
  insts.push_back(gen_single_cone_25d(4.0));
  for (std::uint64_t seed = 1; seed <= 6; ++seed) insts.push_back(gen_random_25d(seed, 33, 4.0));
  std::vector<Run25> runs(insts.size());
  parallel_for(insts.size(), [&](std::size_t n) {
    runs[n].id = insts[n].id;
    runs[n].lambda = insts[n].terrain.lipschitz();
    runs[n].report = evaluate(insts[n], ctx.spec25, &runs[n].path);
  });
  for (auto& r : runs) ctx.runs25.push_back(std::move(r));
}

CriterionResult c1(Context& ctx) {
  CriterionResult r{1, "unobstructed-anchor", false, "", 0.0};
  const auto t0 = Clock::now();
  const auto rep = evaluate(gen_unobstructed_1d(3, 1.0, ctx.spec1.s), ctx.spec1);
  r.seconds = since(t0);
  ctx.reports1d.push_back(rep);
  r.pass = std::abs(rep.ratio - kOptimalRatio) <= 1e-3 && r.seconds < 1.0;
  r.detail = fmt("ratio=%.7f expected %.7f +-1e-3, runtime < 1 s", rep.ratio, kOptimalRatio);
  return r;
}

CriterionResult c2(Context& ctx) {
  CriterionResult r{2, "obstructed-anchor", false, "", 0.0};
  const auto t0 = Clock::now();
  const auto rep = evaluate(gen_peak_worstcase_1d(4.0 / 13.0, ctx.spec1.s), ctx.spec1);
  r.seconds = since(t0);
  ctx.reports1d.push_back(rep);
  r.pass = std::abs(rep.ratio_star - kOptimalRatio) <= 1e-3 && std::abs(rep.opt - 12.0 / 13.0) <= 1e-6 &&
           rep.ratio <= rep.ratio_star && r.seconds < 1.0;
  r.detail = fmt("ratio_star=%.7f opt=%.9f (12/13=%.9f) ratio=%.7f", rep.ratio_star, rep.opt, 12.0 / 13.0, rep.ratio);
  return r;
}

CriterionResult c3(Context& ctx) {
  CriterionResult r{3, "sweep-optimality", false, "", 0.0};
  const auto t0 = Clock::now();
  const double s = ctx.spec1.s;
  const auto table = sweep_dr(s, 0.0, 1.0, 10000);
  const double arg = table.rows[table.best_row][0];
  const double gap = std::abs(cstar_case1(4.0 / 13.0, s) - cstar_case2(s));
  r.seconds = since(t0);
  r.pass = std::abs(arg - 4.0 / 13.0) <= 1e-4 && gap <= 1e-6 && r.seconds < 1.0;
  r.detail = fmt("argmax d_r=%.6f (4/13=%.6f), |case1(4/13)-case2|=%.2e", arg, 4.0 / 13.0, gap);
  return r;
}

CriterionResult c4(Context& ctx) {
  CriterionResult r{4, "ceiling-fuzz", false, "", 0.0};
  const auto t0 = Clock::now();
  const std::size_t n = 200;
  ctx.random1d.clear();
  ctx.random1d.reserve(n);
  for (std::size_t k = 0; k < n; ++k) ctx.random1d.push_back(gen_random_1d(k + 1));
  std::vector<RatioReport> reps(n);
  parallel_for(n, [&](std::size_t k) { reps[k] = evaluate(ctx.random1d[k], ctx.spec1); });
  r.seconds = since(t0);
  double worst = 0.0;
  int degenerate = 0;
  for (const auto& rep : reps) {
    worst = std::max(worst, rep.ratio);
    if (rep.flags & kFlagDegenerate) ++degenerate;
    ctx.reports1d.push_back(rep);
  }
  r.pass = worst <= kOptimalRatio + 1e-3 && r.seconds < 60.0;
  r.detail = fmt("%g instances, worst ratio=%.6f <= %.6f, %g degenerate", n, worst, kOptimalRatio + 1e-3, degenerate);
  return r;
}

CriterionResult c5(Context& ctx) {
  CriterionResult r{5, "floor-check", false, "", 0.0};
  const auto t0 = Clock::now();
  const double floor = std::sqrt(82.0) - 0.1;
  r.pass = true;
  std::string per;
  for (int d = 1; d <= 3; ++d) {
    const auto family = gen_thm1_pits(d);
    std::vector<RatioReport> reps(family.size());
    parallel_for(family.size(), [&](std::size_t k) { reps[k] = evaluate(family[k], ctx.spec1); });
    double worst = 0.0;
    for (const auto& rep : reps) {
      worst = std::max(worst, rep.ratio);
      ctx.reports1d.push_back(rep);
    }
    r.pass = r.pass && worst >= floor;
    per += fmt(" d=%g:%.4f", d, worst);
  }
  r.seconds = since(t0);
  r.pass = r.pass && r.seconds < 30.0;
  r.detail = "family worst ratios" + per + fmt(" >= %.3f", floor);
  return r;
}

CriterionResult c6(Context& ctx) {
  CriterionResult r{6, "line-search-sanity", false, "", 0.0};
  const auto t0 = Clock::now();
  const ProjectedPath guide(ctx.spec1.s, ctx.spec1.eps0);
  const double sup = line_search_sup_ratio(ctx.spec1, guide.first_index() + 3, 40);
  r.seconds = since(t0);
  r.pass = sup >= 8.99 && sup <= 9.001;
  r.detail = fmt("sup ratio=%.7f in [8.99, 9.001]", sup);
  return r;
}

// Smallest k with 2k + 1 >= 4 sqrt(2 lambda), counted up from 0.
int minimal_k(double lambda) {
  int k = 0;
  while (2.0 * k + 1.0 < 4.0 * std::sqrt(2.0 * lambda) * (1.0 - 1e-12)) ++k;
  return k;
}

CriterionResult c7(Context& ctx) {
  CriterionResult r{7, "grid-tour-suite", false, "", 0.0};
  const auto t0 = Clock::now();
  if (ctx.family_worst.empty()) run_pit_families(ctx);
  run_other_25d(ctx);
  std::size_t grids = 0, bad_cells = 0, bad_tour = 0, bad_lift = 0, bad_ascent = 0;
  double worst_lift = 0.0, worst_path = 0.0;
  for (const auto& run : ctx.runs25) {
    const double sl = std::sqrt(run.lambda);
    for (const auto& g : run.path.grids) {
      ++grids;
      const int k = minimal_k(run.lambda);
      if (g.grid.k != k || g.grid.cells_per_side * g.grid.cells_per_side != (2 * k + 1) * (2 * k + 1)) ++bad_cells;
      const double tour_bound = 2.0 * (static_cast<double>(g.component_size) - 1.0) * g.grid.cell_side;
      if (g.horizontal_length > tour_bound * (1.0 + 1e-12) + 1e-12) ++bad_tour;
      const double lift_bound = g.grid.x * sl / 2.0 + run.lambda * g.grid.cell_side / 8.0;
      if (g.lift > lift_bound) ++bad_lift;
      if (g.z_before > g.grid.height + 1e-9) ++bad_ascent;
      worst_lift = std::max(worst_lift, g.lift / (g.grid.x * sl / 2.0));
      if (g.grid.x > ctx.spec25.eps0) worst_path = std::max(worst_path, g.path_length_at_grid / (g.grid.x * sl));
    }
  }
  ctx.measured.path_per_grid = worst_path;
  r.seconds = since(t0);
  const double path_limit = regression::kPathPerGrid * (1.0 + regression::kRegressionTolerance);
  r.pass = grids > 0 && bad_cells + bad_tour + bad_lift + bad_ascent == 0 && worst_path <= path_limit;
  r.detail = fmt("%g grids over %g runs; violations cells=%g tour=", grids, ctx.runs25.size(), bad_cells) +
             fmt("%g lift=%g ascent=%g; max lift/(x sqrt(l)/2)=%.3f", bad_tour, bad_lift, bad_ascent, worst_lift) +
             fmt("; path/(x sqrt(l))=%.2f <= %.2f", worst_path, path_limit);
  return r;
}

CriterionResult c8(Context&) {
  CriterionResult r{8, "cone-visibility", false, "", 0.0};
  const auto t0 = Clock::now();
  std::vector<Terrain25D> terrains;
  for (std::uint64_t seed = 11; seed <= 14; ++seed) terrains.push_back(gen_random_25d(seed, 33, 4.0).terrain);
  terrains.push_back(gen_pit_grid_25d(16.0).terrain);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int per_terrain = 200;
  int triples = 0, failures = 0, refined = 0;
  for (const auto& terrain : terrains) {
    const double lambda = terrain.lipschitz();
    const Point2 lo = terrain.origin();
    const double wx = static_cast<double>(terrain.cols() - 1) * terrain.spacing();
    const double wy = static_cast<double>(terrain.rows() - 1) * terrain.spacing();
    const double zspan = terrain.max_height() - terrain.min_height() + 1.0;
    for (int n = 0; n < per_terrain; ++n) {
      Point3 t, p;
      for (int attempt = 0;; ++attempt) {
        const Point2 tx{lo.x + wx * unit(rng), lo.y + wy * unit(rng)};
        const Point2 px{lo.x + wx * unit(rng), lo.y + wy * unit(rng)};
        t = {tx.x, tx.y, terrain.height_at(tx)};
        p = {px.x, px.y, terrain.height_at(px) + zspan * unit(rng)};
        if (terrain.segment_clear(p, t) && sees3d(terrain, p, t)) break;
      }
      const double dz = zspan * unit(rng);
      const double rad = unit(rng) * dz / lambda;
      const double ang = 2.0 * M_PI * unit(rng);
      const Point3 q{p.x + rad * std::cos(ang), p.y + rad * std::sin(ang), p.z + dz};
      ++triples;
      if (sees3d(terrain, q, t)) continue;
      // Re-check with finer samples and the exact predicate before failing.
      ++refined;
      if (!sees3d(terrain, q, t, terrain.spacing() / 16.0) && !terrain.segment_clear(q, t)) ++failures;
    }
  }
  r.seconds = since(t0);
  r.pass = triples >= 1000 && failures == 0;
  r.detail = fmt("%g triples, %g needed refinement, %g failures", triples, refined, failures);
  return r;
}

CriterionResult c9(Context& ctx) {
  CriterionResult r{9, "lambda-scaling", false, "", 0.0};
  const auto t0 = Clock::now();
  if (ctx.family_worst.empty()) run_pit_families(ctx);
  const double limit = regression::kRatioPerSqrtLambda * (1.0 + regression::kRegressionTolerance);
  double c_meas = 0.0, worst_growth = 0.0;
  bool ok = true;
  std::string per;
  for (std::size_t k = 0; k < ctx.family_worst.size(); ++k) {
    const auto [lambda, ratio] = ctx.family_worst[k];
    c_meas = std::max(c_meas, ratio / std::sqrt(lambda));
    ok = ok && ratio <= limit * std::sqrt(lambda);
    per += fmt(" l=%g:%.1f", lambda, ratio);
    if (k > 0) {
      const double growth = ratio / ctx.family_worst[k - 1].second;
      worst_growth = std::max(worst_growth, growth);
      ok = ok && growth <= regression::kLambdaScalingSlack * 2.0;
    }
  }
  ctx.measured.ratio_per_sqrt_lambda = c_meas;
  r.seconds = ctx.family_seconds + since(t0);
  r.pass = ok && r.seconds < 120.0;
  r.detail = "worst ratios" + per +
             fmt("; max ratio/sqrt(l)=%.2f <= %.2f; max growth=%.3f <= %.1f", c_meas, limit, worst_growth,
                 regression::kLambdaScalingSlack * 2.0);
  return r;
}

CriterionResult c10(Context& ctx) {
  CriterionResult r{10, "global-invariants", false, "", 0.0};
  const auto t0 = Clock::now();
  std::size_t z_bad = 0, tau_bad = 0, oracle_bad = 0, oracle_n = 0;
  for (const auto& run : ctx.runs25) {
    const auto& v = run.path.polyline.vertices();
    for (std::size_t k = 1; k < v.size(); ++k) {
      if (v[k].z < v[k - 1].z) {
        ++z_bad;
        break;
      }
    }
  }
  for (const auto& rep : ctx.reports1d) {
    if (rep.tau > rep.tau_star * (1.0 + 1e-12) + 1e-12) ++tau_bad;
  }
  double worst_gap = 0.0;
  for (const auto& inst : ctx.random1d) {
    if (!(inst.opt_lower > kEpsGeom)) continue;
    double step = 0.0;
    for (const auto& [name, value] : inst.meta.params) {
      if (name == "grid_step") step = value;
    }
    ++oracle_n;
    const double gap = inst.opt_upper - inst.opt_lower;
    worst_gap = std::max(worst_gap, step > 0.0 ? gap / step : gap);
    if (gap < -1e-9 || gap > 2.0 * step) ++oracle_bad;
  }
  r.seconds = since(t0);
  r.pass = z_bad == 0 && tau_bad == 0 && oracle_bad == 0 && !ctx.runs25.empty() && !ctx.reports1d.empty() && oracle_n > 0;
  r.detail = fmt("z-monotone %g/%g paths, tau<=tau* ", ctx.runs25.size() - z_bad, ctx.runs25.size()) +
             fmt("%g/%g reports, oracles agree %g/%g", ctx.reports1d.size() - tau_bad, ctx.reports1d.size(),
                 oracle_n - oracle_bad, oracle_n) +
             fmt(" (max gap %.3f grid steps)", worst_gap);
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& on_result,
                                            RegressionMeasurement* measured) {
  Context ctx;
  std::vector<CriterionResult (*)(Context&)> criteria{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
  std::vector<CriterionResult> out;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    CriterionResult res;
    try {
      res = criteria[k](ctx);
    } catch (const std::exception& e) {
      res.id = static_cast<int>(k + 1);
      res.name = "criterion";
      res.pass = false;
      res.detail = std::string("error: ") + e.what();
    }
    if (on_result) on_result(res);
    out.push_back(std::move(res));
  }
  if (measured) *measured = ctx.measured;
  return out;
}

}  // namespace tseek
