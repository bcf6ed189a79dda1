#pragma once

#include <cstdint>
#include <vector>

#include "bsm/objective.hpp"
#include "bsm/oracle.hpp"

namespace bsm {

struct GreedyTrace {
  std::vector<int> items;        // insertion order
  std::vector<double> values;    // objective value after each insertion
  std::int64_t evaluations = 0;  // marginal-gain computations performed
  bool reached_target = false;   // greedy_cover only
};

// Lazy greedy with exact parity to a naive full scan: every round selects the
// lowest-index item whose marginal gain lies within 1e-9 of the round's best
// gain. Stale cached bounds are refreshed from a max-heap until no buried
// entry can still reach that tie window, which is sound because gains only
// shrink as the set grows. Returns exactly k items; once all remaining gains
// are zero it stops evaluating and pads with the lowest-index unused items.
GreedyTrace greedy_max(const GroupUtilityOracle& oracle, const SetObjective& obj,
                       int k);

// Same selection rule, but stops as soon as the objective value reaches
// target (within 1e-12) or the budget is exhausted. Never pads;
// reached_target records which way it ended.
GreedyTrace greedy_cover(const GroupUtilityOracle& oracle, const SetObjective& obj,
                         int budget, double target);

}  // namespace bsm
