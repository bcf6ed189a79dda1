#include "bsm/digraph.hpp"

#include <stdexcept>
#include <string>

namespace bsm {

Digraph::Digraph(int node_count, std::vector<std::pair<int, int>> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  if (node_count_ < 1) throw std::invalid_argument("graph needs at least one node");
  for (auto [u, v] : edges_) {
    if (u < 0 || u >= node_count_ || v < 0 || v >= node_count_) {
      throw std::out_of_range("edge endpoint " + std::to_string(u < 0 || u >= node_count_ ? u : v) +
                              " out of range [0, " + std::to_string(node_count_) + ")");
    }
  }

  out_start_.assign(node_count_ + 1, 0);
  in_start_.assign(node_count_ + 1, 0);
  for (auto [u, v] : edges_) {
    ++out_start_[u + 1];
    ++in_start_[v + 1];
  }
  for (int i = 0; i < node_count_; ++i) {
    out_start_[i + 1] += out_start_[i];
    in_start_[i + 1] += in_start_[i];
  }
  out_adj_.resize(edges_.size());
  in_adj_.resize(edges_.size());
  std::vector<int> out_fill(out_start_.begin(), out_start_.end() - 1);
  std::vector<int> in_fill(in_start_.begin(), in_start_.end() - 1);
  for (auto [u, v] : edges_) {
    out_adj_[out_fill[u]++] = v;
    in_adj_[in_fill[v]++] = u;
  }
}

std::span<const int> Digraph::out_neighbors(int v) const {
  return {out_adj_.data() + out_start_[v],
          static_cast<size_t>(out_start_[v + 1] - out_start_[v])};
}

std::span<const int> Digraph::in_neighbors(int v) const {
  return {in_adj_.data() + in_start_[v],
          static_cast<size_t>(in_start_[v + 1] - in_start_[v])};
}

}  // namespace bsm
