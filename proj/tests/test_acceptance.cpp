#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "qsl/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int k = 1; k < argc; ++k) only.push_back(std::atoi(argv[k]));
  bool ok = true;
  qsl::run_acceptance(qsl::kAcceptanceSeed, only, [&](const qsl::CriterionResult& r) {
    ok = ok && r.passed;
    std::cout << qsl::format_result(r) << std::endl;
  });
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
