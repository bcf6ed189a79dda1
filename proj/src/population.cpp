#include "bsm/population.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace bsm {

GroupedPopulation::GroupedPopulation(int group_count, std::vector<int> group_of_user)
    : group_count_(group_count), group_of_(std::move(group_of_user)) {
  if (group_count_ < 1) throw std::invalid_argument("need at least one group");
  if (group_of_.empty()) throw std::invalid_argument("need at least one user");
  sizes_.assign(group_count_, 0);
  for (std::size_t u = 0; u < group_of_.size(); ++u) {
    int g = group_of_[u];
    if (g < 0 || g >= group_count_) {
      throw std::invalid_argument("user " + std::to_string(u) +
                                  " has group index out of range");
    }
    ++sizes_[g];
  }
  for (int g = 0; g < group_count_; ++g) {
    if (sizes_[g] == 0) {
      throw std::invalid_argument("group " + std::to_string(g) + " is empty");
    }
  }
}

double f_from_totals(const GroupedPopulation& pop, std::span<const double> totals) {
  // Size-weighted mean of the group averages.
  double f = 0.0;
  const double m = pop.user_count();
  for (int i = 0; i < pop.group_count(); ++i) {
    f += (pop.group_size(i) / m) * (totals[i] / pop.group_size(i));
  }
  return f;
}

void group_values_from_totals(const GroupedPopulation& pop,
                              std::span<const double> totals,
                              std::span<double> out) {
  for (int i = 0; i < pop.group_count(); ++i) {
    out[i] = totals[i] / pop.group_size(i);
  }
}

double g_from_totals(const GroupedPopulation& pop, std::span<const double> totals) {
  double g = totals[0] / pop.group_size(0);
  for (int i = 1; i < pop.group_count(); ++i) {
    g = std::min(g, totals[i] / pop.group_size(i));
  }
  return g;
}

}  // namespace bsm
