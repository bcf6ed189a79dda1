#pragma once

#include <memory>
#include <vector>

#include "bsm/oracle.hpp"

namespace bsm {

enum class Kernel {
  Rbf,      // benefit exp(-distance)
  KMedian,  // benefit max(0, dbar - distance)
};

// Dense user-by-item benefit table. f_u(S) = max over v in S of at(u, v).
class BenefitMatrix {
 public:
  BenefitMatrix(GroupedPopulation population, int item_count,
                std::vector<double> values);

  const GroupedPopulation& population() const { return population_; }
  int item_count() const { return item_count_; }
  double at(int user, int item) const {
    return values_[static_cast<std::size_t>(user) * item_count_ + item];
  }
  double dbar_used() const { return dbar_used_; }

 private:
  friend BenefitMatrix facility_location(const std::vector<std::vector<double>>&,
                                         const std::vector<std::vector<double>>&,
                                         Kernel, const GroupedPopulation&, double);
  GroupedPopulation population_;
  int item_count_;
  std::vector<double> values_;
  double dbar_used_ = 0.0;
};

// Builds the benefit table from Euclidean point sets. For KMedian, dbar <= 0
// selects the default: the maximum user-item distance (recorded in the
// matrix for reporting); an all-coincident instance has no positive default
// and errors.
BenefitMatrix facility_location(const std::vector<std::vector<double>>& user_points,
                                const std::vector<std::vector<double>>& item_points,
                                Kernel kernel, const GroupedPopulation& population,
                                double dbar = 0.0);

class BenefitOracle final : public GroupUtilityOracle {
 public:
  explicit BenefitOracle(BenefitMatrix matrix);

  const GroupedPopulation& population() const override {
    return matrix_.population();
  }
  int item_count() const override { return matrix_.item_count(); }
  std::unique_ptr<EvalState> new_state() const override;

  const BenefitMatrix& matrix() const { return matrix_; }

 protected:
  void do_group_gains(const EvalState& state, int item,
                      std::span<double> out) const override;
  void do_commit(EvalState& state, int item) const override;

 private:
  BenefitMatrix matrix_;
};

}  // namespace bsm
