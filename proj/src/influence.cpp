#include "bsm/influence.hpp"

#include <stdexcept>
#include <string>

#include "bsm/parallel.hpp"
#include "bsm/rng.hpp"

namespace bsm {

namespace {

struct RrState final : EvalState {
  RrState(int item_count, int group_count, int sample_count)
      : EvalState(item_count, group_count), covered(sample_count, 0) {}
  std::vector<char> covered;
};

void check_probability(double p) {
  if (!(p >= 0.0) || !(p <= 1.0)) {
    throw std::invalid_argument("edge probability must lie in [0, 1]");
  }
}

}  // namespace

std::unique_ptr<EvalState> RrSetOracle::new_state() const {
  return std::make_unique<RrState>(item_count_, population_.group_count(),
                                   sample_count_);
}

void RrSetOracle::do_group_gains(const EvalState& state, int item,
                                 std::span<double> out) const {
  const auto& st = static_cast<const RrState&>(state);
  for (int r : member_of_[item]) {
    if (!st.covered[r]) out[root_group_[r]] += increment_;
  }
}

void RrSetOracle::do_commit(EvalState& state, int item) const {
  auto& st = static_cast<RrState&>(state);
  std::vector<double> gains(population_.group_count(), 0.0);
  do_group_gains(st, item, gains);
  for (int r : member_of_[item]) st.covered[r] = 1;
  note_added(st, item, gains);
}

RrSetOracle build_rr_oracle(const Digraph& graph, double p, int rr_count,
                            const GroupedPopulation& population,
                            std::uint64_t seed, int workers) {
  check_probability(p);
  if (rr_count < 1) throw std::invalid_argument("need at least one sample");
  if (population.user_count() != graph.node_count()) {
    throw std::invalid_argument("population size must match the node count");
  }
  const int n = graph.node_count();

  std::vector<std::vector<int>> sample_nodes(rr_count);
  std::vector<int> root_group(rr_count);
  parallel_for(rr_count, workers, [&](int r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    const int root = static_cast<int>(rng.uniform_int(n));
    root_group[r] = population.group_of(root);

    std::vector<char> visited(n, 0);
    auto& nodes = sample_nodes[r];
    nodes.push_back(root);
    visited[root] = 1;
    for (size_t head = 0; head < nodes.size(); ++head) {
      for (int u : graph.in_neighbors(nodes[head])) {
        if (visited[u]) continue;
        if (rng.uniform() < p) {
          visited[u] = 1;
          nodes.push_back(u);
        }
      }
    }
  });

  RrSetOracle oracle;
  oracle.population_ = population;
  oracle.item_count_ = n;
  oracle.sample_count_ = rr_count;
  oracle.increment_ = static_cast<double>(n) / rr_count;
  oracle.root_group_ = std::move(root_group);
  oracle.member_of_.resize(n);
  std::vector<int> root_seen(population.group_count(), 0);
  for (int r = 0; r < rr_count; ++r) {
    ++root_seen[oracle.root_group_[r]];
    for (int u : sample_nodes[r]) oracle.member_of_[u].push_back(r);
  }
  for (int i = 0; i < population.group_count(); ++i) {
    if (root_seen[i] == 0) {
      throw std::runtime_error("group " + std::to_string(i) +
                               " was never sampled as a root; increase the "
                               "sample count");
    }
  }
  return oracle;
}

McEstimate mc_estimate(const Digraph& graph, double p, std::span<const int> seeds,
                       int reps, const GroupedPopulation& population,
                       std::uint64_t seed, int workers) {
  check_probability(p);
  if (reps < 1) throw std::invalid_argument("need at least one replication");
  if (population.user_count() != graph.node_count()) {
    throw std::invalid_argument("population size must match the node count");
  }
  const int n = graph.node_count();
  const int c = population.group_count();
  for (int s : seeds) {
    if (s < 0 || s >= n) {
      throw std::out_of_range("seed node " + std::to_string(s) +
                              " out of range [0, " + std::to_string(n) + ")");
    }
  }

  // Integer counts land in per-replication slots, so the totals below do not
  // depend on how replications were split across workers.
  std::vector<std::int64_t> counts(static_cast<size_t>(reps) * c, 0);
  parallel_for(reps, workers, [&](int r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    std::vector<char> visited(n, 0);
    std::vector<int> frontier;
    for (int s : seeds) {
      if (!visited[s]) {
        visited[s] = 1;
        frontier.push_back(s);
      }
    }
    for (size_t head = 0; head < frontier.size(); ++head) {
      for (int v : graph.out_neighbors(frontier[head])) {
        if (rng.uniform() < p && !visited[v]) {
          visited[v] = 1;
          frontier.push_back(v);
        }
      }
    }
    auto* slot = counts.data() + static_cast<size_t>(r) * c;
    for (int u : frontier) ++slot[population.group_of(u)];
  });

  std::vector<std::int64_t> per_group(c, 0);
  for (int r = 0; r < reps; ++r) {
    for (int i = 0; i < c; ++i) per_group[i] += counts[static_cast<size_t>(r) * c + i];
  }

  McEstimate est;
  est.group_values.resize(c);
  std::vector<double> totals(c);
  for (int i = 0; i < c; ++i) {
    totals[i] = static_cast<double>(per_group[i]) / reps;
    est.group_values[i] = totals[i] / population.group_size(i);
  }
  est.f = f_from_totals(population, totals);
  est.g = g_from_totals(population, totals);
  return est;
}

}  // namespace bsm
