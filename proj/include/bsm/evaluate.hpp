#pragma once

#include <memory>
#include <span>
#include <vector>

#include "bsm/oracle.hpp"
#include "bsm/solution.hpp"

namespace bsm {

// Replays commits for an arbitrary item set (duplicates collapse).
std::unique_ptr<EvalState> state_of(const GroupUtilityOracle& oracle,
                                    std::span<const int> items);

// Population-average utility of the set.
double eval_f(const GroupUtilityOracle& oracle, std::span<const int> items);

// Per-group average utilities.
std::vector<double> eval_group(const GroupUtilityOracle& oracle,
                               std::span<const int> items);

// Minimum group average.
double eval_g(const GroupUtilityOracle& oracle, std::span<const int> items);

// Truncated saturation share (1/c) sum_i min(1, f_i / (tau*optg)).
// Requires tau*optg > 0.
double eval_gtau(const GroupUtilityOracle& oracle, std::span<const int> items,
                 double tau, double optg);

// min(1, f/(alpha*optf)) plus the saturation share. Requires both
// thresholds positive.
double eval_falpha(const GroupUtilityOracle& oracle, std::span<const int> items,
                   double alpha, double optf, double tau, double optg);

// Evaluates the set and packages it with its metadata.
Solution make_solution(const GroupUtilityOracle& oracle, std::vector<int> items,
                       SolutionMeta meta);

}  // namespace bsm
