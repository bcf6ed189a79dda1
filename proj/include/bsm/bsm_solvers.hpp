#pragma once

#include <cstdint>

#include "bsm/evaluate.hpp"
#include "bsm/greedy.hpp"
#include "bsm/saturate.hpp"
#include "bsm/solution.hpp"

namespace bsm {

enum class BudgetMode {
  ExactK,    // decision-stage greedy runs with budget k
  Inflated,  // budget ceil(k * ln(c/eps)), clamped to the ground-set size
};

struct BsmParams {
  int k = 1;
  double tau = 0.8;
  double eps = 0.05;
  BudgetMode budget_mode = BudgetMode::ExactK;
  std::uint64_t seed = 0;  // carried for reporting; the solvers are deterministic
};

// The two optimum estimates both bicriteria solvers consume: a k-greedy trace
// on the population average (its final value estimates the utility optimum)
// and the maximin witness from saturate_rsm. They depend only on k, so sweeps
// over tau or eps compute them once and share them.
struct OptEstimates {
  GreedyTrace f_trace;
  SaturateResult g_result;
  double greedy_ms = 0.0;
  double saturate_ms = 0.0;

  double opt_f() const {
    return f_trace.values.empty() ? 0.0 : f_trace.values.back();
  }
  double opt_g() const { return g_result.optg; }
};

OptEstimates estimate_optima(const GroupUtilityOracle& oracle, int k,
                             double bisection_tol = 1e-3);

// Plain utility greedy / maximin saturate, wrapped as Solutions for reporting.
Solution greedy_solution(const GroupUtilityOracle& oracle, const OptEstimates& est);
Solution saturate_solution(const GroupUtilityOracle& oracle, const OptEstimates& est);

// Two-stage solver. Stage 1 greedily saturates the tau-level share of every
// group; if the budget runs out first the maximin witness replaces the
// partial set, otherwise stage 2 tops up from the utility-greedy trace.
// Always returns exactly k items; meta.k_prime counts stage-2 additions.
// tau = 0 short-circuits to the utility greedy.
Solution bsm_tsgreedy(const GroupUtilityOracle& oracle, const BsmParams& params);
Solution bsm_tsgreedy(const GroupUtilityOracle& oracle, const BsmParams& params,
                      const OptEstimates& est);

// Bisection solver. Probes alpha in [0,1] (first probe 0.5); per probe, a
// budgeted greedy maximizes the two-part truncated objective and the probe is
// accepted when the value reaches 2(1 - eps/c) - 1e-9. Keeps the solution of
// the last accepted probe; while (1-eps)*alpha_max > alpha_min the bracket
// keeps halving. If nothing is ever accepted the maximin witness is returned
// with alpha_min = 0.
Solution bsm_saturate(const GroupUtilityOracle& oracle, const BsmParams& params);
Solution bsm_saturate(const GroupUtilityOracle& oracle, const BsmParams& params,
                      const OptEstimates& est);

}  // namespace bsm
