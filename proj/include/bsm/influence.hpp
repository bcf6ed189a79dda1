#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "bsm/digraph.hpp"
#include "bsm/oracle.hpp"

namespace bsm {

// Influence estimates from a frozen sample of reverse-reachable sets. Each of
// the R samples picks a uniformly random root user and walks edges backwards,
// keeping each incoming edge independently with probability p. A seed set's
// estimated utility for group i is (m / (m_i * R)) times the number of
// covered samples rooted in group i, an unbiased estimate of the expected
// fraction of group i reached. Once built, the oracle is an ordinary
// deterministic coverage function over the samples.
class RrSetOracle final : public GroupUtilityOracle {
 public:
  const GroupedPopulation& population() const override { return population_; }
  int item_count() const override { return item_count_; }
  std::unique_ptr<EvalState> new_state() const override;

  int sample_count() const { return sample_count_; }

 protected:
  void do_group_gains(const EvalState& state, int item,
                      std::span<double> out) const override;
  void do_commit(EvalState& state, int item) const override;

 private:
  friend RrSetOracle build_rr_oracle(const Digraph&, double, int,
                                     const GroupedPopulation&, std::uint64_t,
                                     int);
  GroupedPopulation population_{1, {0}};
  int item_count_ = 0;
  int sample_count_ = 0;
  double increment_ = 0.0;               // m / R
  std::vector<int> root_group_;          // per sample
  std::vector<std::vector<int>> member_of_;  // item -> samples containing it
};

// Samples rr_count reverse-reachable sets (deterministic: sample r uses the
// stream derived from (seed, r)). Errors if some group never appears as a
// root, which would make its estimate identically zero.
RrSetOracle build_rr_oracle(const Digraph& graph, double p, int rr_count,
                            const GroupedPopulation& population,
                            std::uint64_t seed, int workers = 1);

struct McEstimate {
  double f = 0.0;
  std::vector<double> group_values;
  double g = 0.0;
};

// Forward Monte-Carlo estimate of a fixed seed set: per replication, edges
// fire independently with probability p and reached users are counted per
// group. Replication r draws from the stream derived from (seed, r) and
// counts are integers, so the result is identical for any worker count.
McEstimate mc_estimate(const Digraph& graph, double p, std::span<const int> seeds,
                       int reps, const GroupedPopulation& population,
                       std::uint64_t seed, int workers = 1);

}  // namespace bsm
