#include "bsm/facility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bsm {

BenefitMatrix::BenefitMatrix(GroupedPopulation population, int item_count,
                             std::vector<double> values)
    : population_(std::move(population)), item_count_(item_count),
      values_(std::move(values)) {
  if (item_count_ < 1) throw std::invalid_argument("need at least one item");
  const auto expected =
      static_cast<std::size_t>(population_.user_count()) * item_count_;
  if (values_.size() != expected) {
    throw std::invalid_argument("benefit table has " +
                                std::to_string(values_.size()) +
                                " entries, expected " + std::to_string(expected));
  }
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("benefit entries must be finite and nonnegative");
    }
  }
}

namespace {

double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("points must share one dimension");
  }
  double s = 0.0;
  for (size_t d = 0; d < a.size(); ++d) {
    const double diff = a[d] - b[d];
    s += diff * diff;
  }
  return std::sqrt(s);
}

struct BenefitState final : EvalState {
  BenefitState(int item_count, int group_count, int user_count)
      : EvalState(item_count, group_count), best(user_count, 0.0) {}
  std::vector<double> best;  // per-user best committed benefit
};

}  // namespace

BenefitMatrix facility_location(const std::vector<std::vector<double>>& user_points,
                                const std::vector<std::vector<double>>& item_points,
                                Kernel kernel, const GroupedPopulation& population,
                                double dbar) {
  if (static_cast<int>(user_points.size()) != population.user_count()) {
    throw std::invalid_argument("population size must match the user count");
  }
  if (item_points.empty()) throw std::invalid_argument("need at least one item");

  const int m = static_cast<int>(user_points.size());
  const int n = static_cast<int>(item_points.size());
  std::vector<double> dist(static_cast<std::size_t>(m) * n);
  double max_dist = 0.0;
  for (int u = 0; u < m; ++u) {
    for (int v = 0; v < n; ++v) {
      const double d = euclidean(user_points[u], item_points[v]);
      dist[static_cast<std::size_t>(u) * n + v] = d;
      max_dist = std::max(max_dist, d);
    }
  }

  double dbar_used = 0.0;
  std::vector<double> values(dist.size());
  switch (kernel) {
    case Kernel::Rbf:
      for (size_t i = 0; i < dist.size(); ++i) values[i] = std::exp(-dist[i]);
      break;
    case Kernel::KMedian:
      dbar_used = dbar > 0.0 ? dbar : max_dist;
      if (!(dbar_used > 0.0)) {
        throw std::invalid_argument(
            "all distances are zero; pass an explicit positive dbar");
      }
      for (size_t i = 0; i < dist.size(); ++i) {
        values[i] = std::max(0.0, dbar_used - dist[i]);
      }
      break;
  }

  BenefitMatrix matrix(population, n, std::move(values));
  matrix.dbar_used_ = dbar_used;
  return matrix;
}

BenefitOracle::BenefitOracle(BenefitMatrix matrix) : matrix_(std::move(matrix)) {}

std::unique_ptr<EvalState> BenefitOracle::new_state() const {
  return std::make_unique<BenefitState>(item_count(),
                                        population().group_count(),
                                        population().user_count());
}

void BenefitOracle::do_group_gains(const EvalState& state, int item,
                                   std::span<double> out) const {
  const auto& st = static_cast<const BenefitState&>(state);
  const auto& pop = population();
  for (int u = 0; u < pop.user_count(); ++u) {
    const double gain = matrix_.at(u, item) - st.best[u];
    if (gain > 0.0) out[pop.group_of(u)] += gain;
  }
}

void BenefitOracle::do_commit(EvalState& state, int item) const {
  auto& st = static_cast<BenefitState&>(state);
  std::vector<double> gains(population().group_count(), 0.0);
  do_group_gains(st, item, gains);
  for (int u = 0; u < population().user_count(); ++u) {
    st.best[u] = std::max(st.best[u], matrix_.at(u, item));
  }
  note_added(st, item, gains);
}

}  // namespace bsm
