#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qwmatch/classical_walk.hpp"
#include "qwmatch/graph.hpp"
#include "qwmatch/random.hpp"

namespace qwmatch {

enum class InstanceMode { Homogeneous, Nonhomogeneous };

struct RandomInstance {
  Graph graph;
  StochasticSchedule schedule;
  ProbabilityVector initial;
};

namespace detail {

// Uniform random labeled tree on n vertices, decoded from a random Pruefer
// sequence. n == 2 yields the single edge.
inline std::vector<std::pair<int, int>> random_tree(int n, std::mt19937_64& rng) {
  std::vector<std::pair<int, int>> edges;
  if (n == 2) {
    edges.emplace_back(0, 1);
    return edges;
  }
  std::vector<int> sequence(n - 2);
  for (int& s : sequence) {
    s = static_cast<int>(uniform_below(rng, n));
  }
  std::vector<int> degree(n, 1);
  for (int s : sequence) {
    ++degree[s];
  }
  for (int s : sequence) {
    for (int j = 0; j < n; ++j) {
      if (degree[j] == 1) {
        edges.emplace_back(j, s);
        degree[j] = 0;
        --degree[s];
        break;
      }
    }
  }
  int first = -1;
  for (int j = 0; j < n; ++j) {
    if (degree[j] == 1) {
      if (first < 0) {
        first = j;
      } else {
        edges.emplace_back(first, j);
      }
    }
  }
  return edges;
}

}  // namespace detail

// Connected random instance: uniform spanning tree plus random extra edges,
// a column-stochastic schedule supported exactly on the adjacency, and a
// random initial distribution. Identical output for identical inputs.
inline RandomInstance generate_instance(std::uint64_t seed, int n, InstanceMode mode) {
  if (n < 2) {
    throw std::invalid_argument("generate_instance: need at least two vertices");
  }
  std::mt19937_64 rng(detail::mix64(seed));

  auto edges = detail::random_tree(n, rng);
  std::vector<std::vector<bool>> present(n, std::vector<bool>(n, false));
  for (const auto& [u, v] : edges) {
    present[u][v] = present[v][u] = true;
  }
  std::vector<std::pair<int, int>> candidates;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!present[u][v]) {
        candidates.emplace_back(u, v);
      }
    }
  }
  const std::size_t extra = detail::uniform_below(
      rng, std::min<std::uint64_t>(n, candidates.size()) + 1);
  for (std::size_t i = 0; i < extra; ++i) {
    const std::size_t j = i + detail::uniform_below(rng, candidates.size() - i);
    std::swap(candidates[i], candidates[j]);
    edges.push_back(candidates[i]);
  }
  Graph graph = build_graph(edges);

  const std::uint64_t schedule_seed = rng();
  StochasticSchedule schedule =
      mode == InstanceMode::Homogeneous
          ? StochasticSchedule::homogeneous(random_stochastic_matrix(graph, schedule_seed))
          : StochasticSchedule::random_generator(graph, schedule_seed);

  std::vector<double> mass(n);
  double total = 0.0;
  for (double& m : mass) {
    m = detail::exponential(rng);
    total += m;
  }
  for (double& m : mass) {
    m /= total;
  }

  return {std::move(graph), std::move(schedule), ProbabilityVector(std::move(mass))};
}

}  // namespace qwmatch
