#include <atomic>
#include <cmath>

#include "doctest.h"
#include "tseek/error.hpp"
#include "tseek/evaluation.hpp"

using namespace tseek;

static const double kS = std::sqrt(2.0) / 6.0;

TEST_CASE("case-1 formula matches simulation on peak instances") {
  StrategySpec1D sp;
  for (double dr : {0.2, 4.0 / 13.0, 0.5, 0.9}) {
    const auto inst = gen_peak_worstcase_1d(dr, kS);
    const auto rep = evaluate(inst, sp);
    CHECK(rep.ratio_star == doctest::Approx(cstar_case1(dr, kS)).epsilon(2e-4));
    CHECK((rep.flags & kFlagRayStop) != 0);
    CHECK(rep.ratio <= rep.ratio_star + 1e-12);
  }
}

TEST_CASE("unobstructed pits: ratio peaks at d_r = 2^(i-3)") {
  StrategySpec1D sp;
  const double full = evaluate(gen_unobstructed_1d(3, 1.0, kS), sp).ratio_star;
  CHECK(full == doctest::Approx(9.0 * std::sqrt(19.0 / 18.0)).epsilon(1e-4));
  CHECK(evaluate(gen_unobstructed_1d(3, 0.5, kS), sp).ratio_star < full);
  CHECK(evaluate(gen_unobstructed_1d(5, 4.0, kS), sp).ratio_star == doctest::Approx(full).epsilon(1e-5));
}

TEST_CASE("equalization at the optimal slope") {
  const double dr = argmax_case1(kS);
  CHECK(dr == doctest::Approx(4.0 / 13.0).epsilon(1e-6));
  CHECK(cstar_case1(dr, kS) == doctest::Approx(cstar_case2(kS)).epsilon(1e-9));
  CHECK(cstar_case2(kS) == doctest::Approx(9.2466).epsilon(1e-4));
  // nearby slopes are worse
  for (double s : {kS - 0.01, kS + 0.01}) {
    CHECK(std::max(cstar_case1(argmax_case1(s), s), cstar_case2(s)) > cstar_case2(kS));
  }
}

TEST_CASE("doubling line search tends to 9") {
  const double r = line_search_sup_ratio(StrategySpec1D{}, -5, 30);
  CHECK(r <= 9.0 + 1e-9);
  CHECK(r >= 8.999);
}

TEST_CASE("sweep tables") {
  const auto t = sweep_dr(kS, 0.0, 1.0, 100);
  CHECK(t.rows.size() == 101u);
  CHECK(t.rows[t.best_row][0] == doctest::Approx(0.31).epsilon(1e-9));
  const auto u = sweep_s(0.23, 0.44, 210);
  CHECK(u.rows[u.best_row][0] == doctest::Approx(kS).epsilon(5e-3));
}

TEST_CASE("zero opt is rejected") { CHECK_THROWS_AS(competitive_ratio(1.0, 0.0), Error); }

TEST_CASE("flags string") {
  CHECK(flags_to_string(kFlagOptBounded | kFlagTargetStop) == "opt_bounded|target_stop");
  CHECK(flags_to_string(kFlagNone).empty());
}

TEST_CASE("parallel_for covers every index once") {
  std::vector<std::atomic<int>> hits(257);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
}

TEST_CASE("case-1 closed form by hand") {
  auto hand = [](double d, double s) {
    return (8 + d) * std::sqrt(1 + s * s) / std::sqrt(d * d + s * s * (4 - d) * (4 - d));
  };
  CHECK(cstar_case1(4.0 / 13.0, kS) == doctest::Approx(3 * std::sqrt(19.0 / 2.0)).epsilon(1e-9));
  CHECK(cstar_case1(0.0, kS) == doctest::Approx(2 * std::sqrt(19.0)).epsilon(1e-9));
  CHECK(cstar_case1(1.0, kS) == doctest::Approx(7.549834).epsilon(1e-6));
  for (double d = 0.0; d <= 1.0; d += 0.05) CHECK(cstar_case1(d, 0.3) == doctest::Approx(hand(d, 0.3)));
}

TEST_CASE("case-1 rises then falls around 4/13") {
  const double h = 1e-4;
  for (double d = 0.0; d + h < 4.0 / 13.0; d += h) CHECK(cstar_case1(d + h, kS) > cstar_case1(d, kS));
  for (double d = 4.0 / 13.0 + h; d + h <= 1.0; d += h) CHECK(cstar_case1(d + h, kS) < cstar_case1(d, kS));
}

TEST_CASE("peak instance opt values") {
  CHECK(gen_peak_worstcase_1d(4.0 / 13.0, kS).opt_lower == doctest::Approx(12.0 / 13.0).epsilon(1e-6));
  CHECK(gen_peak_worstcase_1d(1.0, kS).opt_lower == doctest::Approx(std::sqrt(1 + 9 * kS * kS)).epsilon(1e-6));
}
