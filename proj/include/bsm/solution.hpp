#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bsm {

struct SolutionMeta {
  std::string algorithm;
  // Utility-stage additions (two-stage solver only).
  std::optional<int> k_prime;
  // Final bisection bracket (threshold-decision solver only).
  std::optional<double> alpha_min;
  std::optional<double> alpha_max;
  // Marginal-gain evaluations performed by the producing call.
  std::int64_t evaluations = 0;
  double wall_ms = 0.0;
};

struct Solution {
  std::vector<int> items;  // insertion order, distinct
  double f_value = 0.0;
  std::vector<double> group_values;
  double g_value = 0.0;
  SolutionMeta meta;
};

}  // namespace bsm
