#pragma once

#include <memory>
#include <vector>

#include "bsm/digraph.hpp"
#include "bsm/oracle.hpp"

namespace bsm {

// Set system: item v covers the users in item_users[v]. Construction sorts
// and deduplicates each list and validates user indices.
class CoverageInstance {
 public:
  CoverageInstance(GroupedPopulation population,
                   std::vector<std::vector<int>> item_users);

  const GroupedPopulation& population() const { return population_; }
  int item_count() const { return static_cast<int>(item_users_.size()); }
  const std::vector<int>& users_of(int item) const { return item_users_[item]; }

 private:
  GroupedPopulation population_;
  std::vector<std::vector<int>> item_users_;
};

// f_u(S) = 1 when some item in S covers u.
class CoverageOracle final : public GroupUtilityOracle {
 public:
  explicit CoverageOracle(CoverageInstance instance);

  const GroupedPopulation& population() const override {
    return instance_.population();
  }
  int item_count() const override { return instance_.item_count(); }
  std::unique_ptr<EvalState> new_state() const override;

  const CoverageInstance& instance() const { return instance_; }

 protected:
  void do_group_gains(const EvalState& state, int item,
                      std::span<double> out) const override;
  void do_commit(EvalState& state, int item) const override;

 private:
  CoverageInstance instance_;
};

// Dominating-set style construction: item v covers itself and its
// out-neighbors. Users and items are both the node set.
CoverageInstance coverage_from_digraph(const Digraph& graph,
                                       const GroupedPopulation& population);

}  // namespace bsm
