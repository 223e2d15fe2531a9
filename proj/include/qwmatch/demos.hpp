#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qwmatch/classical_walk.hpp"
#include "qwmatch/graph.hpp"

namespace qwmatch {

struct DemoInstance {
  std::string name;
  std::string description;
  Graph graph;
  StochasticSchedule schedule;
  ProbabilityVector initial;
};

inline std::vector<std::string> demo_names() { return {"cycle4", "k3", "path5-lazy"}; }

// Built-in instances: the 4-cycle and triangle uniform walks started from a
// point mass, and a biased 0.7/0.3 walk on the 5-path (a true lazy walk
// needs self-loops, which the graph model rejects).
inline DemoInstance make_demo(const std::string& name) {
  if (name == "cycle4") {
    Graph g = build_graph({{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    RealMatrix p(4, 4);
    for (int u = 0; u < 4; ++u) {
      for (int v : g.neighbors(u)) {
        p(v, u) = 0.5;
      }
    }
    return {name, "uniform 0.5/0.5 walk on the 4-cycle from vertex 0", g,
            StochasticSchedule::homogeneous(std::move(p)), ProbabilityVector::point_mass(4, 0)};
  }
  if (name == "k3") {
    Graph g = build_graph({{0, 1}, {1, 2}, {0, 2}});
    RealMatrix p(3, 3);
    for (int u = 0; u < 3; ++u) {
      for (int v : g.neighbors(u)) {
        p(v, u) = 0.5;
      }
    }
    return {name, "uniform walk on the complete graph K3 from vertex 0", g,
            StochasticSchedule::homogeneous(std::move(p)), ProbabilityVector::point_mass(3, 0)};
  }
  if (name == "path5-lazy") {
    Graph g = build_graph({{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    RealMatrix p(5, 5);
    p(1, 0) = 1.0;
    p(3, 4) = 1.0;
    for (int u = 1; u <= 3; ++u) {
      p(u - 1, u) = 0.7;
      p(u + 1, u) = 0.3;
    }
    return {name, "biased 0.7/0.3 walk on the 5-path from the middle vertex", g,
            StochasticSchedule::homogeneous(std::move(p)), ProbabilityVector::point_mass(5, 2)};
  }
  throw std::invalid_argument("unknown demo '" + name + "'");
}

}  // namespace qwmatch
