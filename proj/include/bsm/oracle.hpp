#pragma once

#include <memory>
#include <span>
#include <vector>

#include "bsm/population.hpp"

namespace bsm {

class GroupUtilityOracle;

// Mutable evaluation state for one growing solution set. group_totals()[i]
// tracks sum over users u in group i of f_u(S) for the committed set S.
// Oracle implementations subclass this to carry their own coverage
// bookkeeping; a state must only ever be used with the oracle that made it.
class EvalState {
 public:
  virtual ~EvalState() = default;

  const std::vector<double>& group_totals() const { return totals_; }
  // Committed items in insertion order.
  const std::vector<int>& items() const { return items_; }
  bool contains(int item) const { return picked_[item] != 0; }
  int size() const { return static_cast<int>(items_.size()); }

 protected:
  EvalState(int item_count, int group_count)
      : totals_(group_count, 0.0), picked_(item_count, 0) {}

 private:
  friend class GroupUtilityOracle;
  std::vector<double> totals_;
  std::vector<int> items_;
  std::vector<char> picked_;
};

// A grouped family of per-user utilities f_u, evaluated incrementally.
// Implementations must be monotone (gains never negative) and submodular
// (gains never grow as the set grows), deterministic once constructed, and
// safe to share read-only across threads. EvalState objects are single-owner.
class GroupUtilityOracle {
 public:
  virtual ~GroupUtilityOracle() = default;

  virtual const GroupedPopulation& population() const = 0;
  virtual int item_count() const = 0;
  virtual std::unique_ptr<EvalState> new_state() const = 0;

  // Fills out (size = group count) with the per-group increase of the
  // utility totals if item were added. Overwrites out; an already committed
  // item reports all zeros.
  void group_gains(const EvalState& state, int item, std::span<double> out) const;

  // Adds item to the state; committing a duplicate is a no-op.
  void commit(EvalState& state, int item) const;

 protected:
  virtual void do_group_gains(const EvalState& state, int item,
                              std::span<double> out) const = 0;
  virtual void do_commit(EvalState& state, int item) const = 0;

  // Shared bookkeeping for implementations of do_commit: accumulates totals
  // and records the insertion.
  static void note_added(EvalState& state, int item, std::span<const double> gains);

 private:
  void check_item(int item) const;
};

}  // namespace bsm
