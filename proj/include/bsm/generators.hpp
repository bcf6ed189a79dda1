#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "bsm/digraph.hpp"
#include "bsm/oracle.hpp"

namespace bsm {

struct SbmConfig {
  int n = 0;
  std::vector<double> proportions;  // positive, sum to 1 within 1e-9
  double p_intra = 0.0;
  double p_inter = 0.0;
  bool directed = false;
  std::uint64_t seed = 0;
};

// Block-model random graph: every node pair (ordered when directed) draws an
// edge with p_intra inside a group and p_inter across groups. Group sizes are
// floor(proportion * n) with the remainder in the last group; undirected
// edges materialize as two arcs.
std::pair<Digraph, GroupedPopulation> gen_sbm(const SbmConfig& cfg);

struct BlobConfig {
  std::vector<int> counts;                   // points per group, >= 1
  std::vector<std::vector<double>> centers;  // one center per group, equal dims
  std::vector<double> sigmas;                // isotropic stddev per group, > 0
  std::uint64_t seed = 0;
};

struct BlobData {
  std::vector<std::vector<double>> users;
  std::vector<std::vector<double>> items;
  GroupedPopulation population;
};

// Gaussian point clouds, one blob per group. Items default to the user
// points themselves; pass a second config to sample a separate item cloud.
BlobData gen_blobs(const BlobConfig& cfg,
                   const std::optional<BlobConfig>& item_cfg = std::nullopt);

// Adversarial block construction. Block b contributes two items: the even
// index 2b gives every user in the block a small utility A = alpha*(m_b-1)/m_b,
// the odd index 2b+1 gives everyone except the block's first user utility 1.
// Each block's first user forms a singleton group; all remaining users share
// the last group. Maximin forces the small items even though they cost almost
// all utility.
class HardInstanceOracle final : public GroupUtilityOracle {
 public:
  HardInstanceOracle(int blocks, double alpha, int m_per_block);

  const GroupedPopulation& population() const override { return population_; }
  int item_count() const override { return 2 * blocks_; }
  std::unique_ptr<EvalState> new_state() const override;

 protected:
  void do_group_gains(const EvalState& state, int item,
                      std::span<double> out) const override;
  void do_commit(EvalState& state, int item) const override;

 private:
  int blocks_;
  int m_per_block_;
  double small_value_;  // alpha * (m_per_block - 1) / m_per_block
  GroupedPopulation population_;
};

HardInstanceOracle gen_hard_instance(int k, double alpha, int m_per_block);

}  // namespace bsm
