#pragma once

#include <functional>
#include <string>
#include <vector>

namespace tseek {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// "PASS  4 ceiling-fuzz: ... (1.23 s)"
std::string format_line(const CriterionResult& r);

// Measured values of the frozen regression constants.
struct RegressionMeasurement {
  double ratio_per_sqrt_lambda = 0.0;
  double path_per_grid = 0.0;
};

// Runs the ten acceptance criteria in order; on_result sees each as it completes.
std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& on_result = {},
                                            RegressionMeasurement* measured = nullptr);

}  // namespace tseek
