#pragma once

#include <cstdint>
#include <vector>

#include "bsm/oracle.hpp"

namespace bsm {

struct SaturateResult {
  std::vector<int> items;   // size <= k witness, insertion order
  double optg = 0.0;        // eval_g(items); 0 when items is empty
  double t_lo = 0.0;        // final bisection bracket, for diagnostics
  double t_hi = 0.0;
  std::int64_t evaluations = 0;
};

// Robust (maximin) submodular maximization by bisection on the target level.
// The level bracket starts at [0, min_i f_i(per-group k-greedy set)], a sound
// upper bound on what any size-k set can guarantee every group. At each probe
// level t a greedy cover maximizes the population-weighted truncated
// composite sum_i (m_i/m) min(1, f_i/t) under budget k; the probe is accepted
// when the cover saturates. The witness of the largest accepted level is
// returned, and optg is its exact maximin value. Stops once the bracket
// shrinks below bisection_tol relative to the initial upper bound. A group
// nobody can reach leaves the result empty with optg 0.
SaturateResult saturate_rsm(const GroupUtilityOracle& oracle, int k,
                            double bisection_tol = 1e-3);

}  // namespace bsm
