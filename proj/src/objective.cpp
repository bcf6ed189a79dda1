#include "bsm/objective.hpp"

#include <algorithm>
#include <stdexcept>

namespace bsm {

GroupAverage::GroupAverage(const GroupedPopulation& pop, int group)
    : pop_(&pop), group_(group) {
  if (group < 0 || group >= pop.group_count()) {
    throw std::invalid_argument("group index out of range");
  }
}

TruncatedComposite::TruncatedComposite(const GroupedPopulation& pop,
                                       std::vector<Term> group_terms,
                                       std::optional<Term> global_term)
    : pop_(&pop),
      group_terms_(std::move(group_terms)),
      global_term_(global_term) {
  if (static_cast<int>(group_terms_.size()) != pop.group_count()) {
    throw std::invalid_argument("need one term per group");
  }
  auto check = [](const Term& t) {
    if (!(t.threshold > 0.0)) throw std::invalid_argument("non-positive threshold");
    if (t.weight < 0.0) throw std::invalid_argument("negative weight");
  };
  // max_value_ accumulates in the exact order value() sums, so a fully capped
  // composite compares equal to it bit-for-bit.
  if (global_term_) {
    check(*global_term_);
    max_value_ += global_term_->weight;
  }
  for (const Term& t : group_terms_) {
    check(t);
    max_value_ += t.weight;
  }
}

double TruncatedComposite::value(std::span<const double> totals) const {
  double v = 0.0;
  if (global_term_) {
    double avg = f_from_totals(*pop_, totals);
    v += global_term_->weight * std::min(1.0, avg / global_term_->threshold);
  }
  for (int i = 0; i < pop_->group_count(); ++i) {
    double avg = totals[i] / pop_->group_size(i);
    v += group_terms_[i].weight * std::min(1.0, avg / group_terms_[i].threshold);
  }
  return v;
}

TruncatedComposite TruncatedComposite::gtau(const GroupedPopulation& pop,
                                            double tau, double optg) {
  double level = tau * optg;
  if (!(level > 0.0)) throw std::invalid_argument("non-positive threshold");
  std::vector<Term> terms(pop.group_count(),
                          Term{1.0 / pop.group_count(), level});
  return TruncatedComposite(pop, std::move(terms), std::nullopt);
}

TruncatedComposite TruncatedComposite::falpha(const GroupedPopulation& pop,
                                              double alpha, double optf,
                                              double tau, double optg) {
  double flevel = alpha * optf;
  double glevel = tau * optg;
  if (!(flevel > 0.0) || !(glevel > 0.0)) {
    throw std::invalid_argument("non-positive threshold");
  }
  std::vector<Term> terms(pop.group_count(),
                          Term{1.0 / pop.group_count(), glevel});
  return TruncatedComposite(pop, std::move(terms), Term{1.0, flevel});
}

TruncatedComposite TruncatedComposite::weighted_cover(const GroupedPopulation& pop,
                                                      double level) {
  if (!(level > 0.0)) throw std::invalid_argument("non-positive threshold");
  std::vector<Term> terms(pop.group_count());
  for (int i = 0; i < pop.group_count(); ++i) {
    terms[i] = Term{static_cast<double>(pop.group_size(i)) / pop.user_count(),
                    level};
  }
  return TruncatedComposite(pop, std::move(terms), std::nullopt);
}

}  // namespace bsm
