#pragma once

#include <vector>

#include "bsm/oracle.hpp"

namespace bsm {

struct ExactResult {
  double opt_f = 0.0;
  std::vector<int> opt_f_items;
  double opt_g = 0.0;
  std::vector<int> opt_g_items;
  // Best utility among size-k sets with g >= tau * opt_g (slack 1e-12).
  double bsm_value = 0.0;
  std::vector<int> bsm_items;
  double tau = 0.0;
};

// Exhaustive enumeration of all size-k subsets: the unconstrained utility and
// maximin optima plus the tau-constrained utility optimum. Guarded to
// C(n, k) <= 1e7 subsets. Ties resolve to the lexicographically smallest
// witness; the parallel split merges with the same rule, so worker count
// never changes the answer.
ExactResult brute_force(const GroupUtilityOracle& oracle, int k, double tau,
                        int workers = 1);

}  // namespace bsm
