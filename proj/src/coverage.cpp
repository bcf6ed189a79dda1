#include "bsm/coverage.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace bsm {

CoverageInstance::CoverageInstance(GroupedPopulation population,
                                   std::vector<std::vector<int>> item_users)
    : population_(std::move(population)), item_users_(std::move(item_users)) {
  if (item_users_.empty()) throw std::invalid_argument("coverage needs at least one item");
  const int m = population_.user_count();
  for (auto& users : item_users_) {
    std::sort(users.begin(), users.end());
    users.erase(std::unique(users.begin(), users.end()), users.end());
    for (int u : users) {
      if (u < 0 || u >= m) {
        throw std::out_of_range("covered user " + std::to_string(u) +
                                " out of range [0, " + std::to_string(m) + ")");
      }
    }
  }
}

namespace {

struct CoverageState final : EvalState {
  CoverageState(int item_count, int group_count, int user_count)
      : EvalState(item_count, group_count), covered(user_count, 0) {}
  std::vector<char> covered;
};

}  // namespace

CoverageOracle::CoverageOracle(CoverageInstance instance)
    : instance_(std::move(instance)) {}

std::unique_ptr<EvalState> CoverageOracle::new_state() const {
  return std::make_unique<CoverageState>(item_count(),
                                         population().group_count(),
                                         population().user_count());
}

void CoverageOracle::do_group_gains(const EvalState& state, int item,
                                    std::span<double> out) const {
  const auto& st = static_cast<const CoverageState&>(state);
  const auto& pop = population();
  for (int u : instance_.users_of(item)) {
    if (!st.covered[u]) out[pop.group_of(u)] += 1.0;
  }
}

void CoverageOracle::do_commit(EvalState& state, int item) const {
  auto& st = static_cast<CoverageState&>(state);
  std::vector<double> gains(population().group_count(), 0.0);
  do_group_gains(st, item, gains);
  for (int u : instance_.users_of(item)) st.covered[u] = 1;
  note_added(st, item, gains);
}

CoverageInstance coverage_from_digraph(const Digraph& graph,
                                       const GroupedPopulation& population) {
  if (population.user_count() != graph.node_count()) {
    throw std::invalid_argument("population size must match the node count");
  }
  std::vector<std::vector<int>> item_users(graph.node_count());
  for (int v = 0; v < graph.node_count(); ++v) {
    item_users[v].push_back(v);
    auto nb = graph.out_neighbors(v);
    item_users[v].insert(item_users[v].end(), nb.begin(), nb.end());
  }
  return {population, std::move(item_users)};
}

}  // namespace bsm
