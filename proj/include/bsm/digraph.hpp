#pragma once

#include <span>
#include <utility>
#include <vector>

namespace bsm {

// Directed graph over dense node indices with both adjacency directions
// materialized up front. Edges are kept exactly as given (self-loops and
// parallel arcs included); neighbor lists preserve edge-list order.
class Digraph {
 public:
  Digraph(int node_count, std::vector<std::pair<int, int>> edges);

  int node_count() const { return node_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  std::span<const int> out_neighbors(int v) const;
  std::span<const int> in_neighbors(int v) const;

 private:
  int node_count_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> out_start_, out_adj_;
  std::vector<int> in_start_, in_adj_;
};

}  // namespace bsm
