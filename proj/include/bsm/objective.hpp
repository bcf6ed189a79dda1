#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "bsm/population.hpp"

namespace bsm {

// A set objective expressed over the per-group totals of a committed state.
// Implementations must stay monotone and submodular as set functions so the
// lazy greedy's cached bounds remain valid.
class SetObjective {
 public:
  virtual ~SetObjective() = default;

  virtual double value(std::span<const double> group_totals) const = 0;

  // Least upper bound on value(); +infinity when there is none.
  virtual double max_value() const {
    return std::numeric_limits<double>::infinity();
  }
};

// Population-average utility.
class PopulationAverage final : public SetObjective {
 public:
  explicit PopulationAverage(const GroupedPopulation& pop) : pop_(&pop) {}
  double value(std::span<const double> totals) const override {
    return f_from_totals(*pop_, totals);
  }

 private:
  const GroupedPopulation* pop_;
};

// Average utility of a single group.
class GroupAverage final : public SetObjective {
 public:
  GroupAverage(const GroupedPopulation& pop, int group);
  double value(std::span<const double> totals) const override {
    return totals[group_] / pop_->group_size(group_);
  }

 private:
  const GroupedPopulation* pop_;
  int group_;
};

// Weighted sum of truncated averages: an optional term on the population
// average plus one term per group average, each contributing
// weight * min(1, average / threshold). Nonnegative weights and positive
// thresholds keep the composite monotone and submodular. When every term is
// capped the value equals max_value() bit-for-bit (both are computed by
// summing the weights in the same order), which makes saturation tests exact.
class TruncatedComposite final : public SetObjective {
 public:
  struct Term {
    double weight = 0.0;
    double threshold = 1.0;
  };

  TruncatedComposite(const GroupedPopulation& pop, std::vector<Term> group_terms,
                     std::optional<Term> global_term);

  // (1/c) sum_i min(1, f_i / (tau*optg)). Saturates exactly when every group
  // average reaches tau*optg.
  static TruncatedComposite gtau(const GroupedPopulation& pop, double tau,
                                 double optg);

  // Truncated population-average term (threshold alpha*optf, weight 1) plus
  // the gtau terms above. Range [0, 2].
  static TruncatedComposite falpha(const GroupedPopulation& pop, double alpha,
                                   double optf, double tau, double optg);

  // Population-weighted cover at a common level: sum_i (m_i/m) min(1, f_i/level).
  static TruncatedComposite weighted_cover(const GroupedPopulation& pop,
                                           double level);

  double value(std::span<const double> totals) const override;
  double max_value() const override { return max_value_; }

 private:
  const GroupedPopulation* pop_;
  std::vector<Term> group_terms_;
  std::optional<Term> global_term_;
  double max_value_ = 0.0;
};

}  // namespace bsm
