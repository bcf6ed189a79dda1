#pragma once

#include <span>
#include <vector>

namespace bsm {

// Users 0..m-1 partitioned into groups 0..c-1. Empty groups are rejected at
// construction: a min-over-groups objective is meaningless with one.
class GroupedPopulation {
 public:
  GroupedPopulation(int group_count, std::vector<int> group_of_user);

  int user_count() const { return static_cast<int>(group_of_.size()); }
  int group_count() const { return group_count_; }
  int group_of(int user) const { return group_of_[user]; }
  int group_size(int group) const { return sizes_[group]; }
  const std::vector<int>& group_sizes() const { return sizes_; }

 private:
  int group_count_;
  std::vector<int> group_of_;
  std::vector<int> sizes_;
};

// The quantities below read a vector of per-group utility totals
// (totals[i] = sum of f_u over users u in group i) and reduce it.

// Population average: the size-weighted mean of the group averages.
double f_from_totals(const GroupedPopulation& pop, std::span<const double> totals);

// Per-group averages totals[i] / m_i.
void group_values_from_totals(const GroupedPopulation& pop,
                              std::span<const double> totals,
                              std::span<double> out);

// Minimum group average.
double g_from_totals(const GroupedPopulation& pop, std::span<const double> totals);

}  // namespace bsm
