#include "bsm/bsm_solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "bsm/objective.hpp"

namespace bsm {

namespace {

constexpr double kThresholdSlack = 1e-9;
// With the plain budget a probe can reject at every alpha; once the bracket
// is this small the search is declared hopeless instead of halving forever.
constexpr double kAlphaFloor = 1e-9;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void validate(const GroupUtilityOracle& oracle, const BsmParams& p) {
  if (p.k < 1) throw std::invalid_argument("k must be at least 1");
  if (p.k > oracle.item_count()) throw std::invalid_argument("k exceeds item count");
  if (p.tau < 0.0 || p.tau > 1.0) throw std::invalid_argument("tau must lie in [0, 1]");
  if (!(p.eps > 0.0) || !(p.eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
}

// Lowest-index items fill the set up to k; monotonicity means this never
// hurts any group value.
void pad_to_k(std::vector<int>& items, int n, int k) {
  std::vector<char> picked(n, 0);
  for (int v : items) picked[v] = 1;
  for (int v = 0; v < n && static_cast<int>(items.size()) < k; ++v) {
    if (!picked[v]) {
      items.push_back(v);
      picked[v] = 1;
    }
  }
}

}  // namespace

OptEstimates estimate_optima(const GroupUtilityOracle& oracle, int k,
                             double bisection_tol) {
  OptEstimates est;
  auto t0 = Clock::now();
  PopulationAverage f(oracle.population());
  est.f_trace = greedy_max(oracle, f, k);
  est.greedy_ms = ms_since(t0);
  auto t1 = Clock::now();
  est.g_result = saturate_rsm(oracle, k, bisection_tol);
  est.saturate_ms = ms_since(t1);
  return est;
}

Solution greedy_solution(const GroupUtilityOracle& oracle, const OptEstimates& est) {
  SolutionMeta meta;
  meta.algorithm = "greedy";
  meta.evaluations = est.f_trace.evaluations;
  meta.wall_ms = est.greedy_ms;
  return make_solution(oracle, est.f_trace.items, std::move(meta));
}

Solution saturate_solution(const GroupUtilityOracle& oracle, const OptEstimates& est) {
  SolutionMeta meta;
  meta.algorithm = "saturate";
  meta.evaluations = est.g_result.evaluations;
  meta.wall_ms = est.saturate_ms;
  return make_solution(oracle, est.g_result.items, std::move(meta));
}

Solution bsm_tsgreedy(const GroupUtilityOracle& oracle, const BsmParams& params) {
  auto t0 = Clock::now();
  validate(oracle, params);
  OptEstimates est = estimate_optima(oracle, params.k);
  Solution sol = bsm_tsgreedy(oracle, params, est);
  sol.meta.evaluations +=
      est.f_trace.evaluations + est.g_result.evaluations;
  sol.meta.wall_ms = ms_since(t0);
  return sol;
}

Solution bsm_tsgreedy(const GroupUtilityOracle& oracle, const BsmParams& params,
                      const OptEstimates& est) {
  auto t0 = Clock::now();
  validate(oracle, params);
  const double level = params.tau * est.opt_g();

  std::vector<int> items;
  int k_prime = 0;
  std::int64_t evals = 0;

  if (level <= 0.0) {
    // Vacuous constraint: the answer is the utility greedy itself.
    items = est.f_trace.items;
    k_prime = static_cast<int>(items.size());
  } else {
    auto share = TruncatedComposite::gtau(oracle.population(), params.tau,
                                          est.opt_g());
    GreedyTrace stage1 =
        greedy_cover(oracle, share, params.k, share.max_value());
    evals += stage1.evaluations;
    if (!stage1.reached_target) {
      // Budget ran out below saturation; the maximin witness is feasible by
      // construction, so it replaces the partial set.
      items = est.g_result.items;
    } else {
      items = stage1.items;
      for (int v : est.f_trace.items) {
        if (static_cast<int>(items.size()) >= params.k) break;
        if (std::find(items.begin(), items.end(), v) == items.end()) {
          items.push_back(v);
          ++k_prime;
        }
      }
    }
  }
  pad_to_k(items, oracle.item_count(), params.k);

  SolutionMeta meta;
  meta.algorithm = "tsgreedy";
  meta.k_prime = k_prime;
  meta.evaluations = evals;
  meta.wall_ms = ms_since(t0);
  return make_solution(oracle, std::move(items), std::move(meta));
}

Solution bsm_saturate(const GroupUtilityOracle& oracle, const BsmParams& params) {
  auto t0 = Clock::now();
  validate(oracle, params);
  OptEstimates est = estimate_optima(oracle, params.k);
  Solution sol = bsm_saturate(oracle, params, est);
  sol.meta.evaluations +=
      est.f_trace.evaluations + est.g_result.evaluations;
  sol.meta.wall_ms = ms_since(t0);
  return sol;
}

Solution bsm_saturate(const GroupUtilityOracle& oracle, const BsmParams& params,
                      const OptEstimates& est) {
  auto t0 = Clock::now();
  validate(oracle, params);
  const auto& pop = oracle.population();
  const int c = pop.group_count();
  const double flevel_base = est.opt_f();  // scaled by alpha per probe
  const double glevel = params.tau * est.opt_g();

  int budget = params.k;
  if (params.budget_mode == BudgetMode::Inflated) {
    double inflated = std::ceil(params.k * std::log(c / params.eps));
    budget = static_cast<int>(
        std::min<double>(oracle.item_count(), std::max(1.0, inflated)));
  }

  // Degenerate thresholds turn their part of the objective into the constant
  // 1 (every term capped from the start); the greedy then only sees the rest.
  double constant = 0.0;
  if (glevel <= 0.0) constant += 1.0;

  const double accept_at = 2.0 * (1.0 - params.eps / c);

  double alpha_min = 0.0;
  double alpha_max = 1.0;
  std::vector<int> best;
  bool accepted = false;
  std::int64_t evals = 0;

  while ((1.0 - params.eps) * alpha_max > alpha_min && alpha_max > kAlphaFloor) {
    const double alpha = 0.5 * (alpha_min + alpha_max);
    double probe_constant = constant;

    std::optional<TruncatedComposite::Term> global;
    if (alpha * flevel_base > 0.0) {
      global = TruncatedComposite::Term{1.0, alpha * flevel_base};
    } else {
      probe_constant += 1.0;
    }
    std::vector<TruncatedComposite::Term> terms(
        c, glevel > 0.0 ? TruncatedComposite::Term{1.0 / c, glevel}
                        : TruncatedComposite::Term{0.0, 1.0});
    TruncatedComposite decision(pop, std::move(terms), global);

    GreedyTrace tr = greedy_max(oracle, decision, budget);
    evals += tr.evaluations;
    double value = tr.values.back() + probe_constant;

    if (value >= accept_at - kThresholdSlack) {
      alpha_min = alpha;
      best = tr.items;
      accepted = true;
    } else {
      alpha_max = alpha;
    }
  }

  if (!accepted) {
    // Hopeless search: report a collapsed bracket alongside the witness so
    // the termination invariant (1-eps)*alpha_max <= alpha_min still holds.
    best = est.g_result.items;
    alpha_max = 0.0;
  }

  SolutionMeta meta;
  meta.algorithm = "bsm-saturate";
  meta.alpha_min = alpha_min;
  meta.alpha_max = alpha_max;
  meta.evaluations = evals;
  meta.wall_ms = ms_since(t0);
  return make_solution(oracle, std::move(best), std::move(meta));
}

}  // namespace bsm
