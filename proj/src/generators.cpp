#include "bsm/generators.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "bsm/rng.hpp"

namespace bsm {

namespace {

GroupedPopulation sbm_population(const SbmConfig& cfg) {
  const int c = static_cast<int>(cfg.proportions.size());
  std::vector<int> sizes(c);
  int assigned = 0;
  for (int i = 0; i < c; ++i) {
    sizes[i] = static_cast<int>(std::floor(cfg.proportions[i] * cfg.n));
    assigned += sizes[i];
  }
  sizes[c - 1] += cfg.n - assigned;

  std::vector<int> group_of;
  group_of.reserve(cfg.n);
  for (int i = 0; i < c; ++i) {
    group_of.insert(group_of.end(), sizes[i], i);
  }
  return {c, std::move(group_of)};
}

}  // namespace

std::pair<Digraph, GroupedPopulation> gen_sbm(const SbmConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("n must be at least 1");
  if (cfg.proportions.empty()) throw std::invalid_argument("need at least one group");
  double sum = 0.0;
  for (double p : cfg.proportions) {
    if (!(p > 0.0)) throw std::invalid_argument("proportions must be positive");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("proportions must sum to 1");
  }
  for (double p : {cfg.p_intra, cfg.p_inter}) {
    if (!(p >= 0.0) || !(p <= 1.0)) {
      throw std::invalid_argument("edge probability must lie in [0, 1]");
    }
  }

  GroupedPopulation pop = sbm_population(cfg);
  Rng rng(cfg.seed);
  std::vector<std::pair<int, int>> edges;
  if (cfg.directed) {
    for (int i = 0; i < cfg.n; ++i) {
      for (int j = 0; j < cfg.n; ++j) {
        if (i == j) continue;
        const double p = pop.group_of(i) == pop.group_of(j) ? cfg.p_intra
                                                            : cfg.p_inter;
        if (rng.uniform() < p) edges.emplace_back(i, j);
      }
    }
  } else {
    for (int i = 0; i < cfg.n; ++i) {
      for (int j = i + 1; j < cfg.n; ++j) {
        const double p = pop.group_of(i) == pop.group_of(j) ? cfg.p_intra
                                                            : cfg.p_inter;
        if (rng.uniform() < p) {
          edges.emplace_back(i, j);
          edges.emplace_back(j, i);
        }
      }
    }
  }
  return {Digraph(cfg.n, std::move(edges)), std::move(pop)};
}

namespace {

void check_blob_config(const BlobConfig& cfg) {
  const size_t c = cfg.counts.size();
  if (c == 0) throw std::invalid_argument("need at least one blob");
  if (cfg.centers.size() != c || cfg.sigmas.size() != c) {
    throw std::invalid_argument("counts, centers and sigmas must align");
  }
  const size_t dim = cfg.centers[0].size();
  if (dim == 0) throw std::invalid_argument("centers need at least one dimension");
  for (const auto& center : cfg.centers) {
    if (center.size() != dim) {
      throw std::invalid_argument("centers must share one dimension");
    }
  }
  for (int count : cfg.counts) {
    if (count < 1) throw std::invalid_argument("blob counts must be at least 1");
  }
  for (double s : cfg.sigmas) {
    if (!(s > 0.0)) throw std::invalid_argument("sigma must be positive");
  }
}

std::vector<std::vector<double>> sample_blobs(const BlobConfig& cfg,
                                              std::vector<int>* group_of) {
  Rng rng(cfg.seed);
  std::vector<std::vector<double>> points;
  for (size_t g = 0; g < cfg.counts.size(); ++g) {
    const auto& center = cfg.centers[g];
    for (int i = 0; i < cfg.counts[g]; ++i) {
      std::vector<double> p(center.size());
      for (size_t d = 0; d < center.size(); ++d) {
        p[d] = center[d] + cfg.sigmas[g] * rng.normal();
      }
      points.push_back(std::move(p));
      if (group_of != nullptr) group_of->push_back(static_cast<int>(g));
    }
  }
  return points;
}

}  // namespace

BlobData gen_blobs(const BlobConfig& cfg,
                   const std::optional<BlobConfig>& item_cfg) {
  check_blob_config(cfg);
  if (item_cfg) check_blob_config(*item_cfg);

  std::vector<int> group_of;
  auto users = sample_blobs(cfg, &group_of);
  auto items = item_cfg ? sample_blobs(*item_cfg, nullptr) : users;
  GroupedPopulation pop(static_cast<int>(cfg.counts.size()), std::move(group_of));
  return {std::move(users), std::move(items), std::move(pop)};
}

namespace {

struct HardState final : EvalState {
  HardState(int item_count, int group_count, int blocks)
      : EvalState(item_count, group_count), has_small(blocks, 0), has_big(blocks, 0) {}
  std::vector<char> has_small;
  std::vector<char> has_big;
};

GroupedPopulation hard_population(int blocks, int m_per_block) {
  std::vector<int> group_of;
  group_of.reserve(static_cast<size_t>(blocks) * m_per_block);
  for (int b = 0; b < blocks; ++b) {
    group_of.push_back(b);
    group_of.insert(group_of.end(), m_per_block - 1, blocks);
  }
  return {blocks + 1, std::move(group_of)};
}

}  // namespace

HardInstanceOracle::HardInstanceOracle(int blocks, double alpha, int m_per_block)
    : blocks_(blocks), m_per_block_(m_per_block),
      small_value_(alpha * (m_per_block - 1) / m_per_block),
      population_(hard_population(std::max(blocks, 1), std::max(m_per_block, 2))) {
  if (blocks < 1) throw std::invalid_argument("need at least one block");
  if (m_per_block < 2) throw std::invalid_argument("blocks need at least two users");
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
}

std::unique_ptr<EvalState> HardInstanceOracle::new_state() const {
  return std::make_unique<HardState>(item_count(), population_.group_count(),
                                     blocks_);
}

void HardInstanceOracle::do_group_gains(const EvalState& state, int item,
                                        std::span<double> out) const {
  const auto& st = static_cast<const HardState&>(state);
  const int b = item / 2;
  const int rest = blocks_;  // everyone but the block leaders shares this group
  if (item % 2 == 0) {
    if (st.has_small[b]) return;
    out[b] += small_value_;
    if (!st.has_big[b]) out[rest] += (m_per_block_ - 1) * small_value_;
  } else {
    if (st.has_big[b]) return;
    const double before = st.has_small[b] ? small_value_ : 0.0;
    out[rest] += (m_per_block_ - 1) * (1.0 - before);
  }
}

void HardInstanceOracle::do_commit(EvalState& state, int item) const {
  auto& st = static_cast<HardState&>(state);
  std::vector<double> gains(population_.group_count(), 0.0);
  do_group_gains(st, item, gains);
  if (item % 2 == 0) {
    st.has_small[item / 2] = 1;
  } else {
    st.has_big[item / 2] = 1;
  }
  note_added(st, item, gains);
}

HardInstanceOracle gen_hard_instance(int k, double alpha, int m_per_block) {
  return {k, alpha, m_per_block};
}

}  // namespace bsm
