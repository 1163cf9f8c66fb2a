#include <iostream>

#include "tseek/acceptance.hpp"

int main() {
  int failed = 0;
  const auto results = tseek::run_acceptance([&](const tseek::CriterionResult& r) {
    std::cout << tseek::format_line(r) << std::endl;
    if (!r.pass) ++failed;
  });
  std::cout << results.size() - failed << '/' << results.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
