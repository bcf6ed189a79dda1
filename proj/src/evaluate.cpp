#include "bsm/evaluate.hpp"

#include "bsm/objective.hpp"

namespace bsm {

std::unique_ptr<EvalState> state_of(const GroupUtilityOracle& oracle,
                                    std::span<const int> items) {
  auto state = oracle.new_state();
  for (int v : items) oracle.commit(*state, v);
  return state;
}

double eval_f(const GroupUtilityOracle& oracle, std::span<const int> items) {
  auto state = state_of(oracle, items);
  return f_from_totals(oracle.population(), state->group_totals());
}

std::vector<double> eval_group(const GroupUtilityOracle& oracle,
                               std::span<const int> items) {
  auto state = state_of(oracle, items);
  std::vector<double> out(oracle.population().group_count());
  group_values_from_totals(oracle.population(), state->group_totals(), out);
  return out;
}

double eval_g(const GroupUtilityOracle& oracle, std::span<const int> items) {
  auto state = state_of(oracle, items);
  return g_from_totals(oracle.population(), state->group_totals());
}

double eval_gtau(const GroupUtilityOracle& oracle, std::span<const int> items,
                 double tau, double optg) {
  auto obj = TruncatedComposite::gtau(oracle.population(), tau, optg);
  auto state = state_of(oracle, items);
  return obj.value(state->group_totals());
}

double eval_falpha(const GroupUtilityOracle& oracle, std::span<const int> items,
                   double alpha, double optf, double tau, double optg) {
  auto obj = TruncatedComposite::falpha(oracle.population(), alpha, optf, tau, optg);
  auto state = state_of(oracle, items);
  return obj.value(state->group_totals());
}

Solution make_solution(const GroupUtilityOracle& oracle, std::vector<int> items,
                       SolutionMeta meta) {
  auto state = state_of(oracle, items);
  const auto& pop = oracle.population();
  Solution sol;
  sol.items = state->items();  // deduplicated insertion order
  sol.group_values.resize(pop.group_count());
  group_values_from_totals(pop, state->group_totals(), sol.group_values);
  sol.f_value = f_from_totals(pop, state->group_totals());
  sol.g_value = g_from_totals(pop, state->group_totals());
  sol.meta = std::move(meta);
  return sol;
}

}  // namespace bsm
