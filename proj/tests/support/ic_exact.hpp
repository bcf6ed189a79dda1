#pragma once

// Exact independent-cascade expectations by enumerating every live-edge
// world. Exponential in the edge count; keep graphs at or below ~16 edges.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "bsm/digraph.hpp"
#include "bsm/population.hpp"

namespace testsupport {

struct ExactIc {
  double f = 0.0;
  std::vector<double> group_values;
  double g = 0.0;
};

inline ExactIc ic_exact(const bsm::Digraph& graph, double p,
                        std::span<const int> seeds,
                        const bsm::GroupedPopulation& pop) {
  const int e = graph.edge_count();
  if (e > 20) throw std::invalid_argument("too many edges to enumerate");
  const int n = graph.node_count();
  const int c = pop.group_count();

  std::vector<double> totals(c, 0.0);
  for (std::uint32_t mask = 0; mask < (1u << e); ++mask) {
    double weight = 1.0;
    for (int i = 0; i < e; ++i) {
      weight *= (mask >> i & 1u) ? p : 1.0 - p;
    }
    if (weight == 0.0) continue;

    std::vector<char> reached(n, 0);
    std::vector<int> frontier;
    for (int s : seeds) {
      if (!reached[s]) {
        reached[s] = 1;
        frontier.push_back(s);
      }
    }
    for (size_t head = 0; head < frontier.size(); ++head) {
      for (int i = 0; i < e; ++i) {
        if (!(mask >> i & 1u)) continue;
        const auto [u, v] = graph.edges()[i];
        if (u == frontier[head] && !reached[v]) {
          reached[v] = 1;
          frontier.push_back(v);
        }
      }
    }
    for (int u : frontier) totals[pop.group_of(u)] += weight;
  }

  ExactIc out;
  out.group_values.resize(c);
  bsm::group_values_from_totals(pop, totals, out.group_values);
  out.f = bsm::f_from_totals(pop, totals);
  out.g = bsm::g_from_totals(pop, totals);
  return out;
}

}  // namespace testsupport
