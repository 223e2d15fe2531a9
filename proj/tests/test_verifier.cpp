#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qwmatch/demos.hpp"
#include "qwmatch/random_instance.hpp"
#include "qwmatch/verifier.hpp"
#include "test_support.hpp"

using Catch::Matchers::WithinAbs;
using qwmatch::Amplitude;
using qwmatch::build_coin;
using qwmatch::build_graph;
using qwmatch::build_shift;
using qwmatch::check_unitary;
using qwmatch::CoinOperator;
using qwmatch::ComplexMatrix;
using qwmatch::dense_oracle;
using qwmatch::Graph;
using qwmatch::initial_state;
using qwmatch::ProbabilityVector;
using qwmatch::qw_step;
using qwmatch::run_matched;
using qwmatch::ShiftPermutation;
using qwmatch::StochasticSchedule;
using qwmatch::Tolerances;
using qwmatch::Wavefunction;

TEST_CASE("check_unitary measures deviation from the identity", "[verifier]") {
  CHECK(check_unitary(ComplexMatrix::identity(4)) == 0.0);

  ComplexMatrix broken = ComplexMatrix::identity(3);
  broken(1, 1) = Amplitude{};  // zero row and column
  CHECK(check_unitary(broken) >= 1.0);

  ComplexMatrix rectangular(2, 3);
  CHECK_THROWS_AS(check_unitary(rectangular), std::invalid_argument);
}

TEST_CASE("dense shift matrix is a 0/1 permutation", "[verifier]") {
  const Graph c4 = build_graph({{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  const ShiftPermutation shift = build_shift(c4);

  // re-materialize densely and count the ones per row and column
  const std::size_t m = shift.permutation.size();
  std::vector<int> row_ones(m, 0);
  std::vector<int> col_ones(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    ++row_ones[shift.permutation[i]];
    ++col_ones[i];
  }
  for (std::size_t i = 0; i < m; ++i) {
    CHECK(row_ones[i] == 1);
    CHECK(col_ones[i] == 1);
  }
}

TEST_CASE("dense_oracle equals the structured step", "[verifier]") {
  SECTION("identity coin is the bare permutation") {
    const Graph c4 = build_graph({{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    const ShiftPermutation shift = build_shift(c4);
    CoinOperator identity;
    for (int v = 0; v < 4; ++v) {
      identity.blocks.push_back(ComplexMatrix::identity(2));
    }
    const Wavefunction psi = initial_state(c4, ProbabilityVector::uniform(4));
    const Wavefunction dense = dense_oracle(shift, identity, psi);
    const Wavefunction structured = shift.apply(psi);
    for (std::size_t i = 0; i < psi.size(); ++i) {
      CHECK(dense.amplitudes[i] == structured.amplitudes[i]);
    }
  }

  SECTION("one constructed triangle step") {
    const Graph k3 = build_graph({{0, 1}, {1, 2}, {0, 2}});
    qwmatch::RealMatrix p(3, 3);
    for (int u = 0; u < 3; ++u) {
      for (int v : k3.neighbors(u)) {
        p(v, u) = 0.5;
      }
    }
    const auto pi0 = ProbabilityVector::point_mass(3, 0);
    const ShiftPermutation shift = build_shift(k3);
    const Wavefunction psi = initial_state(k3, pi0);
    const CoinOperator coin = build_coin(k3, psi, p, pi0);

    const Wavefunction dense = dense_oracle(shift, coin, psi);
    const Wavefunction structured = qw_step(psi, shift, coin);
    for (std::size_t i = 0; i < psi.size(); ++i) {
      CHECK_THAT(std::abs(dense.amplitudes[i] - structured.amplitudes[i]),
                 WithinAbs(0.0, 1e-12));
    }
  }
}

TEST_CASE("run_matched certifies the uniform cycle walk", "[verifier]") {
  const auto demo = qwmatch::make_demo("cycle4");
  const auto result = run_matched(demo.graph, demo.schedule, demo.initial, 10);
  const auto& report = result.report;

  CHECK(report.passed);
  CHECK(report.failure.empty());
  CHECK(report.horizon == 10);
  CHECK(report.max_abs_deviation <= 1e-10);
  CHECK(report.unitarity_worst <= 1e-12);
  CHECK(report.norm_worst <= 1e-10);
  CHECK(report.closed_form_worst <= 1e-10);
  CHECK(report.oracle_checked);
  CHECK(report.oracle_worst <= 1e-12);
  REQUIRE(report.per_step_deviation.size() == 11);
  REQUIRE(result.classical.size() == 11);
  REQUIRE(result.quantum.size() == 11);
  CHECK(result.coins.empty());  // keep_operators not requested
}

TEST_CASE("run_matched at horizon zero reports the exact initial match", "[verifier]") {
  const auto demo = qwmatch::make_demo("k3");
  const auto result = run_matched(demo.graph, demo.schedule, demo.initial, 0);
  REQUIRE(result.report.per_step_deviation.size() == 1);
  CHECK(result.report.per_step_deviation[0] <= 1e-14);  // sqrt round trip, a few ulps
  CHECK(result.report.passed);
}

TEST_CASE("run_matched keeps per-step coins on request", "[verifier]") {
  const auto demo = qwmatch::make_demo("path5-lazy");
  const auto result =
      run_matched(demo.graph, demo.schedule, demo.initial, 6, {}, {}, true);
  CHECK(result.report.passed);
  REQUIRE(result.coins.size() == 6);
  for (const auto& coin : result.coins) {
    REQUIRE(coin.blocks.size() == 5);
  }
}

TEST_CASE("run_matched records aborts instead of throwing", "[verifier]") {
  const auto demo = qwmatch::make_demo("cycle4");
  const auto short_schedule = StochasticSchedule::sequence({demo.schedule.matrix_at(0)});
  const auto result = run_matched(demo.graph, short_schedule, demo.initial, 3);
  CHECK_FALSE(result.report.passed);
  CHECK(result.report.failure.find("exhausted") != std::string::npos);
}

TEST_CASE("seeded random instance matches over a long horizon", "[verifier]") {
  const auto instance =
      qwmatch::generate_instance(7, 12, qwmatch::InstanceMode::Nonhomogeneous);
  const auto result =
      run_matched(instance.graph, instance.schedule, instance.initial, 25);
  CHECK(result.report.passed);
  CHECK(result.report.max_abs_deviation <= 1e-9);
}

TEST_CASE("matched runs pass across a random ensemble", "[verifier][property]") {
  Tolerances tol;
  tol.matching = 1e-10;  // the tighter property-test bound
  for (std::uint64_t seed = 100; seed <= 115; ++seed) {
    const int n = 2 + static_cast<int>(qwmatch::detail::mix64(seed) % 15);
    const auto mode = seed % 2 == 0 ? qwmatch::InstanceMode::Homogeneous
                                    : qwmatch::InstanceMode::Nonhomogeneous;
    const auto instance = qwmatch::generate_instance(seed, n, mode);
    const auto result =
        run_matched(instance.graph, instance.schedule, instance.initial, 15, {}, tol);
    INFO("seed " << seed << " n " << n << " failure '" << result.report.failure << "'");
    REQUIRE(result.report.passed);
  }
}

TEST_CASE("homogeneous convergence does not harm the matching", "[verifier]") {
  const auto demo = qwmatch::make_demo("k3");
  const auto result = run_matched(demo.graph, demo.schedule, demo.initial, 40);
  REQUIRE(result.report.passed);
  CHECK(result.report.max_abs_deviation <= 1e-9);

  const auto stationary = test_support::stationary_distribution(demo.schedule.matrix_at(0));
  double l1 = 0.0;
  for (int v = 0; v < 3; ++v) {
    l1 += std::abs(result.classical.back()[v] - stationary[v]);
  }
  CHECK(l1 <= 1e-6);
}
