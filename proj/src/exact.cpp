#include "bsm/exact.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "bsm/evaluate.hpp"
#include "bsm/parallel.hpp"

namespace bsm {

namespace {

constexpr double kFeasibilitySlack = 1e-12;
constexpr std::uint64_t kEnumerationCap = 10'000'000;

// C(n, k), saturating just above the enumeration cap so the guard can fire
// without overflow.
std::uint64_t binom_capped(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    if (r > 16 * kEnumerationCap) return r;  // already hopeless; stop growing
    r = r * (n - k + i) / i;
  }
  return r;
}

// The r-th size-k subset of [0, n) in lexicographic order.
std::vector<int> unrank(std::uint64_t r, int n, int k) {
  std::vector<int> items;
  items.reserve(k);
  int x = 0;
  for (int i = 0; i < k; ++i) {
    for (;;) {
      const std::uint64_t below = binom_capped(n - x - 1, k - i - 1);
      if (r < below) break;
      r -= below;
      ++x;
    }
    items.push_back(x++);
  }
  return items;
}

// Advances to the next combination in lex order; false once exhausted.
bool next_combination(std::vector<int>& items, int n) {
  const int k = static_cast<int>(items.size());
  for (int i = k - 1; i >= 0; --i) {
    if (items[i] < n - k + i) {
      ++items[i];
      for (int j = i + 1; j < k; ++j) items[j] = items[j - 1] + 1;
      return true;
    }
  }
  return false;
}

struct Best {
  double value = -1.0;
  std::vector<int> items;

  // Candidates arrive in lex order within a worker and workers merge in lex
  // order too, so keeping the first witness of each value is the global lex
  // tie-break.
  void offer(double v, const std::vector<int>& s) {
    if (v > value) {
      value = v;
      items = s;
    }
  }
};

}  // namespace

ExactResult brute_force(const GroupUtilityOracle& oracle, int k, double tau,
                        int workers) {
  const int n = oracle.item_count();
  if (k < 1 || k > n) throw std::invalid_argument("k must lie in [1, item count]");
  if (tau < 0.0 || tau > 1.0) throw std::invalid_argument("tau must lie in [0, 1]");
  const std::uint64_t total = binom_capped(n, k);
  if (total > kEnumerationCap) {
    throw std::invalid_argument("C(" + std::to_string(n) + ", " + std::to_string(k) +
                                ") exceeds the enumeration cap");
  }

  workers = resolve_workers(workers);
  const int chunks = static_cast<int>(
      std::min<std::uint64_t>(total, static_cast<std::uint64_t>(workers)));

  const auto& pop = oracle.population();

  struct PassResult {
    Best f, g;
  };
  std::vector<PassResult> pass1(chunks);
  parallel_for(chunks, workers, [&](int t) {
    const std::uint64_t lo = total * t / chunks;
    const std::uint64_t hi = total * (t + 1) / chunks;
    std::vector<int> items = unrank(lo, n, k);
    for (std::uint64_t r = lo; r < hi; ++r) {
      auto state = state_of(oracle, items);
      pass1[t].f.offer(f_from_totals(pop, state->group_totals()), items);
      pass1[t].g.offer(g_from_totals(pop, state->group_totals()), items);
      next_combination(items, n);
    }
  });

  ExactResult result;
  result.tau = tau;
  Best best_f, best_g;
  for (const auto& pr : pass1) {
    if (!pr.f.items.empty()) best_f.offer(pr.f.value, pr.f.items);
    if (!pr.g.items.empty()) best_g.offer(pr.g.value, pr.g.items);
  }
  result.opt_f = best_f.value;
  result.opt_f_items = best_f.items;
  result.opt_g = best_g.value;
  result.opt_g_items = best_g.items;

  const double need = tau * result.opt_g - kFeasibilitySlack;
  std::vector<Best> pass2(chunks);
  parallel_for(chunks, workers, [&](int t) {
    const std::uint64_t lo = total * t / chunks;
    const std::uint64_t hi = total * (t + 1) / chunks;
    std::vector<int> items = unrank(lo, n, k);
    for (std::uint64_t r = lo; r < hi; ++r) {
      auto state = state_of(oracle, items);
      if (g_from_totals(pop, state->group_totals()) >= need) {
        pass2[t].offer(f_from_totals(pop, state->group_totals()), items);
      }
      next_combination(items, n);
    }
  });
  Best constrained;
  for (const auto& b : pass2) {
    if (!b.items.empty()) constrained.offer(b.value, b.items);
  }
  result.bsm_value = constrained.value;
  result.bsm_items = constrained.items;
  return result;
}

}  // namespace bsm
