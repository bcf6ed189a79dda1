#include "bsm/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace bsm {

void GroupUtilityOracle::group_gains(const EvalState& state, int item,
                                     std::span<double> out) const {
  check_item(item);
  // Implementations accumulate into out, so the overwrite contract lives here.
  std::fill(out.begin(), out.end(), 0.0);
  do_group_gains(state, item, out);
}

void GroupUtilityOracle::commit(EvalState& state, int item) const {
  check_item(item);
  if (state.contains(item)) return;
  do_commit(state, item);
}

void GroupUtilityOracle::note_added(EvalState& state, int item,
                                    std::span<const double> gains) {
  for (std::size_t i = 0; i < gains.size(); ++i) state.totals_[i] += gains[i];
  state.items_.push_back(item);
  state.picked_[item] = 1;
}

void GroupUtilityOracle::check_item(int item) const {
  if (item < 0 || item >= item_count()) {
    throw std::out_of_range("item index " + std::to_string(item) +
                            " out of range [0, " + std::to_string(item_count()) +
                            ")");
  }
}

}  // namespace bsm
