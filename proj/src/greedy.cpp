#include "bsm/greedy.hpp"

#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace bsm {

namespace {

constexpr double kTieSlack = 1e-9;
constexpr double kTargetSlack = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Entry {
  double bound;
  int item;
};

struct EntryOrder {
  bool operator()(const Entry& a, const Entry& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.item > b.item;
  }
};

GreedyTrace run_greedy(const GroupUtilityOracle& oracle, const SetObjective& obj,
                       int budget, bool pad_to_budget, bool has_target,
                       double target) {
  const int n = oracle.item_count();
  const int c = oracle.population().group_count();
  if (budget < 1) throw std::invalid_argument("budget must be at least 1");
  if (budget > n) throw std::invalid_argument("budget exceeds item count");

  GreedyTrace trace;
  auto state = oracle.new_state();
  double current = obj.value(state->group_totals());
  if (has_target && current >= target - kTargetSlack) {
    trace.reached_target = true;
    return trace;
  }

  std::vector<double> gain_buf(c), tmp_totals(c);
  auto gain_of = [&](int item) {
    oracle.group_gains(*state, item, gain_buf);
    const auto& totals = state->group_totals();
    for (int i = 0; i < c; ++i) tmp_totals[i] = totals[i] + gain_buf[i];
    ++trace.evaluations;
    return obj.value(tmp_totals) - current;
  };

  // Max-heap of stale upper bounds; each unselected item has exactly one
  // entry. Bounds only overestimate because gains shrink as the set grows.
  std::priority_queue<Entry, std::vector<Entry>, EntryOrder> heap;
  for (int v = 0; v < n; ++v) heap.push({kInf, v});

  std::vector<Entry> fresh;  // exact gains recomputed this round
  fresh.reserve(n);

  while (static_cast<int>(trace.items.size()) < budget) {
    fresh.clear();
    double best = -kInf;
    // Refresh until nothing buried can still tie with the best fresh gain.
    while (!heap.empty() && heap.top().bound >= best - kTieSlack) {
      Entry top = heap.top();
      heap.pop();
      double gain = gain_of(top.item);
      fresh.push_back({gain, top.item});
      if (gain > best) best = gain;
    }

    if (best <= 0.0) {
      // Every remaining gain is zero (or rounding dust below it): stop the
      // scan. The padding path keeps committing so the set reaches budget.
      for (const Entry& e : fresh) heap.push(e);
      if (pad_to_budget) {
        for (int v = 0; v < n && static_cast<int>(trace.items.size()) < budget;
             ++v) {
          if (state->contains(v)) continue;
          oracle.commit(*state, v);
          current = obj.value(state->group_totals());
          trace.items.push_back(v);
          trace.values.push_back(current);
        }
      }
      break;
    }

    int chosen = n;
    for (const Entry& e : fresh) {
      if (e.bound >= best - kTieSlack && e.item < chosen) chosen = e.item;
    }
    for (const Entry& e : fresh) {
      if (e.item != chosen) heap.push(e);
    }

    oracle.commit(*state, chosen);
    current = obj.value(state->group_totals());
    trace.items.push_back(chosen);
    trace.values.push_back(current);

    if (has_target && current >= target - kTargetSlack) {
      trace.reached_target = true;
      break;
    }
  }

  if (has_target && !trace.reached_target) {
    trace.reached_target = current >= target - kTargetSlack;
  }
  return trace;
}

}  // namespace

GreedyTrace greedy_max(const GroupUtilityOracle& oracle, const SetObjective& obj,
                       int k) {
  return run_greedy(oracle, obj, k, true, false, 0.0);
}

GreedyTrace greedy_cover(const GroupUtilityOracle& oracle, const SetObjective& obj,
                         int budget, double target) {
  return run_greedy(oracle, obj, budget, false, true, target);
}

}  // namespace bsm
