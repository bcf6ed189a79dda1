#include "bsm/saturate.hpp"

#include <limits>
#include <stdexcept>

#include "bsm/evaluate.hpp"
#include "bsm/greedy.hpp"
#include "bsm/objective.hpp"

namespace bsm {

SaturateResult saturate_rsm(const GroupUtilityOracle& oracle, int k,
                            double bisection_tol) {
  const auto& pop = oracle.population();
  if (k < 1) throw std::invalid_argument("budget must be at least 1");
  if (k > oracle.item_count()) throw std::invalid_argument("budget exceeds item count");
  if (!(bisection_tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  SaturateResult res;

  // No size-k set can lift group i above the best k items chosen for that
  // group alone, so min over groups of those greedy values bounds the level.
  double t_hi = std::numeric_limits<double>::infinity();
  for (int i = 0; i < pop.group_count(); ++i) {
    GroupAverage one_group(pop, i);
    GreedyTrace tr = greedy_max(oracle, one_group, k);
    res.evaluations += tr.evaluations;
    t_hi = std::min(t_hi, tr.values.back());
  }
  if (!(t_hi > 0.0)) {
    // Some group is unreachable by every item; the maximin optimum is 0.
    return res;
  }

  const double scale = t_hi;
  double t_lo = 0.0;
  while (t_hi - t_lo > bisection_tol * scale) {
    double t = 0.5 * (t_lo + t_hi);
    auto cover = TruncatedComposite::weighted_cover(pop, t);
    GreedyTrace tr = greedy_cover(oracle, cover, k, cover.max_value());
    res.evaluations += tr.evaluations;
    if (tr.reached_target) {
      t_lo = t;
      res.items = tr.items;
    } else {
      t_hi = t;
    }
  }

  res.t_lo = t_lo;
  res.t_hi = t_hi;
  if (!res.items.empty()) res.optg = eval_g(oracle, res.items);
  return res;
}

}  // namespace bsm
