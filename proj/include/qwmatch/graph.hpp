#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qwmatch {

// One basis state |v, c> of the walker space: the coin index c selects the
// c-th smallest-labeled neighbor of v.
struct EdgeState {
  int vertex = 0;
  int coin = 0;

  bool operator==(const EdgeState&) const = default;
};

// Directed view of a simple undirected graph. Neighbor lists are sorted
// ascending, which fixes the edge ordering eta and the flat edge-state
// layout: state (v, c) lives at block_offset(v) + c, so the flat dimension
// is the sum of degrees (= twice the number of undirected edges).
//
// Immutable after construction; concurrent reads need no synchronization.
class Graph {
 public:
  int vertex_count() const { return static_cast<int>(offsets_.size()) - 1; }

  int degree(int v) const {
    check_vertex(v);
    return static_cast<int>(offsets_[v + 1] - offsets_[v]);
  }

  std::span<const int> neighbors(int v) const {
    check_vertex(v);
    return {neighbors_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  int max_degree() const {
    int d = 0;
    for (int v = 0; v < vertex_count(); ++v) {
      d = std::max(d, degree(v));
    }
    return d;
  }

  // Total number of directed edge states.
  std::size_t edge_state_count() const { return neighbors_.size(); }

  // Start of vertex v's coin block in the flat layout.
  std::size_t block_offset(int v) const {
    check_vertex(v);
    return offsets_[v];
  }

  // c-th smallest-labeled neighbor of v; strictly increasing in c.
  int eta(int v, int c) const {
    check_vertex(v);
    if (c < 0 || offsets_[v] + c >= offsets_[v + 1]) {
      throw std::out_of_range("eta: coin " + std::to_string(c) + " out of range for vertex " +
                              std::to_string(v));
    }
    return neighbors_[offsets_[v] + c];
  }

  // Coin index of u within N(v), i.e. the c' with eta(v, c') = u.
  int sigma(int u, int v) const {
    const auto nv = neighbors(v);
    const auto it = std::lower_bound(nv.begin(), nv.end(), u);
    if (it == nv.end() || *it != u) {
      throw std::invalid_argument("sigma: vertex " + std::to_string(u) +
                                  " is not a neighbor of " + std::to_string(v));
    }
    return static_cast<int>(it - nv.begin());
  }

  std::size_t edge_state_index(int v, int c) const {
    check_vertex(v);
    if (c < 0 || offsets_[v] + c >= offsets_[v + 1]) {
      throw std::out_of_range("edge_state_index: coin " + std::to_string(c) +
                              " out of range for vertex " + std::to_string(v));
    }
    return offsets_[v] + c;
  }

  std::size_t edge_state_index(EdgeState s) const { return edge_state_index(s.vertex, s.coin); }

  EdgeState edge_state_at(std::size_t index) const {
    if (index >= neighbors_.size()) {
      throw std::out_of_range("edge_state_at: flat index " + std::to_string(index) +
                              " out of range");
    }
    const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
    const int v = static_cast<int>(it - offsets_.begin()) - 1;
    return {v, static_cast<int>(index - offsets_[v])};
  }

  friend Graph build_graph(const std::vector<std::pair<int, int>>& edges);

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= vertex_count()) {
      throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
    }
  }

  std::vector<int> neighbors_;          // concatenated sorted neighbor lists
  std::vector<std::size_t> offsets_;    // per-vertex degree prefix sums, size n + 1
};

// Builds the symmetric directed view of the undirected edge list. Vertex ids
// must be dense 0..n-1. Rejects self-loops, duplicate edges, and isolated
// vertices (a vertex with no neighbors has no coin space).
inline Graph build_graph(const std::vector<std::pair<int, int>>& edges) {
  int n = 0;
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0) {
      throw std::invalid_argument("build_graph: negative vertex id");
    }
    if (u == v) {
      throw std::invalid_argument("build_graph: self-loop at vertex " + std::to_string(u));
    }
    n = std::max({n, u + 1, v + 1});
  }

  std::vector<std::vector<int>> adjacency(n);
  for (const auto& [u, v] : edges) {
    adjacency[u].push_back(v);
    adjacency[v].push_back(u);
  }

  Graph g;
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int v = 0; v < n; ++v) {
    auto& list = adjacency[v];
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
      throw std::invalid_argument("build_graph: duplicate edge at vertex " + std::to_string(v));
    }
    if (list.empty()) {
      throw std::invalid_argument("build_graph: vertex " + std::to_string(v) +
                                  " is isolated (degree 0)");
    }
    g.offsets_[v + 1] = g.offsets_[v] + list.size();
    g.neighbors_.insert(g.neighbors_.end(), list.begin(), list.end());
  }
  return g;
}

}  // namespace qwmatch
