#include <catch2/catch_amalgamated.hpp>

#include <queue>

#include "qwmatch/demos.hpp"
#include "qwmatch/random_instance.hpp"

using Catch::Matchers::WithinAbs;
using qwmatch::generate_instance;
using qwmatch::Graph;
using qwmatch::InstanceMode;
using qwmatch::make_demo;
using qwmatch::StochasticSchedule;
using qwmatch::validate_schedule;

namespace {

bool connected(const Graph& g) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = true;
  int reached = 1;
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    for (int u : g.neighbors(v)) {
      if (!seen[u]) {
        seen[u] = true;
        ++reached;
        frontier.push(u);
      }
    }
  }
  return reached == g.vertex_count();
}

}  // namespace

TEST_CASE("two vertices force the single-edge graph", "[instance]") {
  const auto instance = generate_instance(1, 2, InstanceMode::Homogeneous);
  REQUIRE(instance.graph.vertex_count() == 2);
  REQUIRE(instance.graph.degree(0) == 1);
  REQUIRE(instance.graph.degree(1) == 1);

  const auto p = instance.schedule.matrix_at(0);
  CHECK(p(1, 0) == 1.0);
  CHECK(p(0, 1) == 1.0);
  CHECK(p(0, 0) == 0.0);
  CHECK(p(1, 1) == 0.0);
}

TEST_CASE("generated schedules validate over a long horizon", "[instance]") {
  const auto instance = generate_instance(7, 12, InstanceMode::Nonhomogeneous);
  CHECK(validate_schedule(instance.schedule, instance.graph, 25).ok());
}

TEST_CASE("generation is deterministic per seed", "[instance]") {
  const auto a = generate_instance(42, 9, InstanceMode::Nonhomogeneous);
  const auto b = generate_instance(42, 9, InstanceMode::Nonhomogeneous);

  REQUIRE(a.graph.vertex_count() == b.graph.vertex_count());
  for (int v = 0; v < a.graph.vertex_count(); ++v) {
    CHECK(std::vector<int>(a.graph.neighbors(v).begin(), a.graph.neighbors(v).end()) ==
          std::vector<int>(b.graph.neighbors(v).begin(), b.graph.neighbors(v).end()));
  }
  CHECK(a.initial == b.initial);
  for (int t = 0; t < 4; ++t) {
    CHECK(a.schedule.matrix_at(t) == b.schedule.matrix_at(t));
  }

  const auto c = generate_instance(43, 9, InstanceMode::Nonhomogeneous);
  CHECK(a.initial != c.initial);
}

TEST_CASE("homogeneous instances reuse one matrix, nonhomogeneous do not", "[instance]") {
  const auto homogeneous = generate_instance(5, 8, InstanceMode::Homogeneous);
  CHECK(homogeneous.schedule.mode() == StochasticSchedule::Mode::Homogeneous);
  CHECK(homogeneous.schedule.matrix_at(0) == homogeneous.schedule.matrix_at(9));

  const auto nonhomogeneous = generate_instance(5, 8, InstanceMode::Nonhomogeneous);
  CHECK(nonhomogeneous.schedule.mode() == StochasticSchedule::Mode::Generator);
  CHECK(nonhomogeneous.schedule.matrix_at(0) != nonhomogeneous.schedule.matrix_at(1));
}

TEST_CASE("generated graphs are connected with positive support", "[instance][property]") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int n = 2 + static_cast<int>(seed % 17);
    const auto instance = generate_instance(seed, n, InstanceMode::Homogeneous);
    INFO("seed " << seed << " n " << n);
    REQUIRE(connected(instance.graph));

    // support exactly on the adjacency: every edge carries positive mass
    const auto p = instance.schedule.matrix_at(0);
    for (int u = 0; u < n; ++u) {
      for (int v : instance.graph.neighbors(u)) {
        REQUIRE(p(v, u) > 0.0);
      }
    }
  }
}

TEST_CASE("generate_instance rejects tiny vertex counts", "[instance]") {
  CHECK_THROWS_AS(generate_instance(1, 1, InstanceMode::Homogeneous), std::invalid_argument);
}

TEST_CASE("demo instances are well formed", "[instance]") {
  for (const std::string& name : qwmatch::demo_names()) {
    const auto demo = make_demo(name);
    INFO("demo " << name);
    CHECK(demo.name == name);
    CHECK(validate_schedule(demo.schedule, demo.graph, 10).ok());
  }
  CHECK_THROWS_AS(make_demo("nope"), std::invalid_argument);
}

TEST_CASE("the path demo walks 0.7 toward the low end", "[instance]") {
  const auto demo = make_demo("path5-lazy");
  const auto p = demo.schedule.matrix_at(0);
  CHECK(p(0, 1) == 0.7);
  CHECK(p(2, 1) == 0.3);
  CHECK(p(1, 0) == 1.0);
  CHECK(p(3, 4) == 1.0);
  CHECK_THAT(demo.initial[2], WithinAbs(1.0, 0.0));
}
