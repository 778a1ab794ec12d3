#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qsl {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr std::uint64_t kAcceptanceSeed = 20240611;

/// Runs the acceptance criteria (all of them when `only` is empty). Each
/// result is handed to `report` as soon as it is available.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = kAcceptanceSeed, const std::vector<int>& only = {},
                                            const std::function<void(const CriterionResult&)>& report = {});

std::string format_result(const CriterionResult& r);

}  // namespace qsl
