#include "tseek/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <thread>

#include "tseek/error.hpp"

namespace tseek {

double cstar_case1(double d_r, double s) {
  if (!(d_r >= 0.0 && d_r <= 1.0)) throw Error(ErrorCode::InvalidParam, "cstar_case1 needs 0 <= d_r <= 1");
  if (!(s > 0.0)) throw Error(ErrorCode::InvalidParam, "cstar_case1 needs s > 0");
  return (8.0 + d_r) * std::sqrt(1.0 + s * s) / std::sqrt(d_r * d_r + s * s * (4.0 - d_r) * (4.0 - d_r));
}

double cstar_case2(double s) {
  if (!(s >= 0.0)) throw Error(ErrorCode::InvalidParam, "cstar_case2 needs s >= 0");
  return 9.0 * std::sqrt(1.0 + s * s);
}

std::string flags_to_string(unsigned flags) {
  static const std::pair<unsigned, const char*> names[] = {
      {kFlagDegenerate, "degenerate"}, {kFlagOptBounded, "opt_bounded"}, {kFlagRayStop, "ray_stop"},
      {kFlagTargetStop, "target_stop"}, {kFlag25D, "2.5d"}};
  std::string out;
  for (const auto& [bit, name] : names) {
    if (!(flags & bit)) continue;
    if (!out.empty()) out += '|';
    out += name;
  }
  return out;
}

namespace {

template <class Events, class Name>
std::string summarize(const Events& events, Name name) {
  std::map<std::string, int> counts;
  for (const auto& e : events) ++counts[std::string(name(e.kind))];
  std::string out;
  for (const auto& [k, n] : counts) {
    if (!out.empty()) out += ' ';
    out += k + ":" + std::to_string(n);
  }
  return out;
}

void fill_ratios(RatioReport& r) {
  if (!(r.opt > kEpsGeom)) {
    r.flags |= kFlagDegenerate;
    r.ratio = r.ratio_star = 0.0;
    return;
  }
  r.ratio = r.tau / r.opt;
  r.ratio_star = r.tau_star / r.opt;
}

}  // namespace

RatioReport evaluate(const Instance1D& inst, const StrategySpec1D& spec, SearchPath1D* path_out) {
  RatioReport r;
  r.instance_id = inst.id;
  const auto stop = inst.ray ? StopCondition::ray(*inst.ray) : StopCondition::target(inst.target.position);
  r.flags |= inst.ray ? kFlagRayStop : kFlagTargetStop;
  auto path = build_search_path(inst.terrain, spec, stop);
  r.tau = path.tau;
  r.tau_star = tau_star(spec, path.p_t.y);

  if (inst.opt_exact()) {
    r.opt = inst.opt_upper;
  } else if (inst.ray) {
    r.opt = geodesic_to_ray(inst.terrain, *inst.ray).length;
  } else if (std::isfinite(inst.opt_upper) && inst.opt_upper > 0.0) {
    r.opt = inst.opt_upper;
    r.flags |= kFlagOptBounded;
  } else {
    r.opt = geodesic_to_visibility(inst.terrain, inst.target, DiscretizedOptions{}).length;
    r.flags |= kFlagOptBounded;
  }
  fill_ratios(r);
  r.events = summarize(path.events, [](EventKind k) { return to_string(k); });
  if (path_out) *path_out = std::move(path);
  return r;
}

RatioReport evaluate(const Instance25D& inst, const StrategySpec25D& spec, SearchPath3D* path_out) {
  RatioReport r;
  r.instance_id = inst.id;
  r.flags |= kFlag25D | kFlagTargetStop;
  auto path = build_path_25d(inst.terrain, spec, inst.target);
  r.tau = r.tau_star = path.tau;
  // Without an exact value the lower bound keeps ratio checks conservative.
  r.opt = inst.opt_lower;
  if (!inst.opt_exact()) r.flags |= kFlagOptBounded;
  fill_ratios(r);
  r.events = summarize(path.events, [](Event25Kind k) { return to_string(k); });
  if (path_out) *path_out = std::move(path);
  return r;
}

// ---------------------------------------------------------------------------
// Sweeps

double argmax_case1(double s, double tol) {
  // Unimodal on [0, 1]: increasing up to the maximum, decreasing after.
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = 1.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = cstar_case1(c, s), fd = cstar_case1(d, s);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = cstar_case1(c, s);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = cstar_case1(d, s);
    }
  }
  return 0.5 * (a + b);
}

SweepTable sweep_dr(double s, double from, double to, int steps) {
  if (steps < 1 || !(from <= to) || from < 0.0 || to > 1.0) throw Error(ErrorCode::InvalidParam, "bad d_r sweep range");
  SweepTable t{"dr", {"dr", "cstar_case1", "cstar_case2"}, {}, 0, 1};
  const double c2 = cstar_case2(s);
  for (int k = 0; k <= steps; ++k) {
    const double d = k == steps ? to : from + (to - from) * k / steps;
    t.rows.push_back({d, cstar_case1(d, s), c2});
    if (t.rows.back()[1] > t.rows[t.best_row][1]) t.best_row = t.rows.size() - 1;
  }
  return t;
}

SweepTable sweep_s(double from, double to, int steps) {
  if (steps < 1 || !(from <= to) || !(from > 0.0)) throw Error(ErrorCode::InvalidParam, "bad s sweep range");
  SweepTable t{"s", {"s", "argmax_dr", "cstar_case1_max", "cstar_case2", "worst"}, {}, 0, 4};
  for (int k = 0; k <= steps; ++k) {
    const double s = k == steps ? to : from + (to - from) * k / steps;
    const double d = argmax_case1(s);
    const double c1 = cstar_case1(d, s);
    const double c2 = cstar_case2(s);
    t.rows.push_back({s, d, c1, c2, std::max(c1, c2)});
    if (t.rows.back()[4] < t.rows[t.best_row][4]) t.best_row = t.rows.size() - 1;
  }
  return t;
}

SweepTable sweep_lambda(const std::vector<double>& lambdas, const StrategySpec25D& spec) {
  if (lambdas.empty()) throw Error(ErrorCode::InvalidParam, "empty lambda list");
  SweepTable t{"lambda", {"lambda", "tau", "opt", "ratio", "ratio_over_sqrt_lambda"}, {}, 0, 4};
  t.rows.resize(lambdas.size());
  parallel_for(lambdas.size(), [&](std::size_t k) {
    const auto inst = gen_pit_grid_25d(lambdas[k]);
    const auto r = evaluate(inst, spec);
    t.rows[k] = {lambdas[k], r.tau, r.opt, r.ratio, r.ratio / std::sqrt(lambdas[k])};
  });
  for (std::size_t k = 1; k < t.rows.size(); ++k) {
    if (t.rows[k][4] > t.rows[t.best_row][4]) t.best_row = k;
  }
  return t;
}

double line_search_sup_ratio(const StrategySpec1D& spec, int i_lo, int i_hi) {
  const ProjectedPath guide(spec.s, spec.eps0);
  double sup = 0.0;
  for (int i = i_lo; i <= i_hi; ++i) {
    for (double side : {1.0, -1.0}) {
      const double target = side * std::ldexp(1.0, i - 3) * (1.0 + 1e-6);
      double pos = 0.0, travel = 0.0;
      for (int j = guide.first_index();; ++j) {
        const double next = guide.end_x(j);
        if ((pos - target) * (next - target) <= 0.0) {
          travel += std::abs(target - pos);
          break;
        }
        travel += std::abs(next - pos);
        pos = next;
      }
      sup = std::max(sup, travel / std::abs(target));
    }
  }
  return sup;
}

// ---------------------------------------------------------------------------
// Parallelism

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TERRAIN_SEEK_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t k = 0; k < n; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k; !failed && (k = next++) < n;) {
        try {
          fn(k);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace tseek
