#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qwmatch/classical_walk.hpp"
#include "qwmatch/graph.hpp"
#include "qwmatch/matrix.hpp"
#include "qwmatch/quantum_walk.hpp"

namespace qwmatch {

// Pass/fail thresholds for a matched run. `matching` bounds |mu - pi|; the
// rest bound construction residuals. The dense oracle only runs up to
// dense_oracle_cap flat dimensions (the materialized operators are O(m^2)).
struct Tolerances {
  double matching = 1e-9;
  double unitarity = 1e-12;
  double norm = 1e-10;
  double closed_form = 1e-10;
  double oracle = 1e-12;
  std::size_t dense_oracle_cap = 512;
};

// Everything run_matched certifies about one co-evolution. `passed` holds
// exactly when every recorded maximum is within its tolerance and the run
// completed.
struct MatchReport {
  int horizon = 0;
  double max_abs_deviation = 0.0;
  std::vector<double> per_step_deviation;  // length horizon + 1
  double unitarity_worst = 0.0;
  double norm_worst = 0.0;
  double closed_form_worst = 0.0;
  double oracle_worst = 0.0;
  bool oracle_checked = false;
  bool passed = false;
  std::string failure;  // non-empty when the run aborted before the horizon
  Tolerances tolerances;
};

struct MatchResult {
  MatchReport report;
  std::vector<ProbabilityVector> classical;  // pi(t), length horizon + 1
  std::vector<ProbabilityVector> quantum;    // mu(t), length horizon + 1
  ShiftPermutation shift;
  std::vector<CoinOperator> coins;  // filled only when keep_operators is set
};

// Worst entrywise deviation of both M^dag M and M M^dag from the identity.
inline double check_unitary(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("check_unitary: matrix is not square");
  }
  const std::size_t n = m.rows();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::complex<double> left{};   // (M^dag M)(i, j)
      std::complex<double> right{};  // (M M^dag)(i, j)
      for (std::size_t k = 0; k < n; ++k) {
        left += std::conj(m(k, i)) * m(k, j);
        right += m(i, k) * std::conj(m(j, k));
      }
      const std::complex<double> expected = (i == j) ? 1.0 : 0.0;
      worst = std::max({worst, std::abs(left - expected), std::abs(right - expected)});
    }
  }
  return worst;
}

namespace detail {

inline ComplexMatrix dense_shift(const ShiftPermutation& shift) {
  const std::size_t m = shift.permutation.size();
  ComplexMatrix s(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    s(shift.permutation[i], i) = 1.0;
  }
  return s;
}

inline ComplexMatrix dense_coin(const CoinOperator& coin) {
  const std::size_t m = coin.dimension();
  ComplexMatrix w(m, m);
  std::size_t offset = 0;
  for (const ComplexMatrix& b : coin.blocks) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      for (std::size_t i = 0; i < b.rows(); ++i) {
        w(offset + i, offset + j) = b(i, j);
      }
    }
    offset += b.rows();
  }
  return w;
}

inline double max_abs_difference(const Wavefunction& a, const Wavefunction& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a.amplitudes[i] - b.amplitudes[i]));
  }
  return worst;
}

inline double max_abs_difference(const ProbabilityVector& a, const ProbabilityVector& b) {
  double worst = 0.0;
  for (int v = 0; v < a.size(); ++v) {
    worst = std::max(worst, std::abs(a[v] - b[v]));
  }
  return worst;
}

}  // namespace detail

// Independent evaluation of one step: materializes S and W as full dense
// matrices and multiplies them through psi. Must agree with qw_step.
inline Wavefunction dense_oracle(const ShiftPermutation& shift, const CoinOperator& coin,
                                 const Wavefunction& psi) {
  if (shift.permutation.size() != psi.size() || coin.dimension() != psi.size()) {
    throw std::invalid_argument("dense_oracle: dimension mismatch");
  }
  const ComplexMatrix s = detail::dense_shift(shift);
  const ComplexMatrix w = detail::dense_coin(coin);
  Wavefunction mixed;
  mixed.amplitudes = matvec(w, std::span<const Amplitude>(psi.amplitudes));
  Wavefunction out;
  out.amplitudes = matvec(s, std::span<const Amplitude>(mixed.amplitudes));
  return out;
}

// Co-evolves the classical walk and the constructed quantum walk for
// `horizon` steps, recording the worst residual of every invariant: vertex
// probability matching, coin unitarity, state norm, closed-form equality,
// and (within the cap) dense oracle agreement. Breaches never throw; they
// land in the report and clear `passed`.
inline MatchResult run_matched(const Graph& g, const StochasticSchedule& schedule,
                               const ProbabilityVector& pi0, int horizon,
                               const BuildConfig& cfg = {}, const Tolerances& tol = {},
                               bool keep_operators = false) {
  if (horizon < 0) {
    throw std::invalid_argument("run_matched: negative horizon");
  }
  if (pi0.size() != g.vertex_count()) {
    throw std::invalid_argument("run_matched: initial distribution dimension mismatch");
  }

  MatchResult result;
  MatchReport& report = result.report;
  report.horizon = horizon;
  report.tolerances = tol;

  result.shift = build_shift(g);
  const bool run_oracle = g.edge_state_count() <= tol.dense_oracle_cap;

  try {
    Wavefunction psi = initial_state(g, pi0);
    ProbabilityVector pi = pi0;

    auto record = [&](const Wavefunction& state, const ProbabilityVector& target) {
      const ProbabilityVector mu = vertex_probabilities(g, state);
      const double deviation = detail::max_abs_difference(mu, target);
      report.per_step_deviation.push_back(deviation);
      report.max_abs_deviation = std::max(report.max_abs_deviation, deviation);
      report.norm_worst = std::max(report.norm_worst, std::abs(state.norm() - 1.0));
      result.quantum.push_back(mu);
      result.classical.push_back(target);
    };

    record(psi, pi);

    for (int t = 0; t < horizon; ++t) {
      const RealMatrix p = schedule.matrix_at(t);
      const CoinOperator coin = build_coin(g, psi, p, pi, cfg);
      for (const ComplexMatrix& block : coin.blocks) {
        report.unitarity_worst = std::max(report.unitarity_worst, check_unitary(block));
      }

      Wavefunction next = qw_step(psi, result.shift, coin);
      if (run_oracle) {
        const Wavefunction dense = dense_oracle(result.shift, coin, psi);
        report.oracle_worst =
            std::max(report.oracle_worst, detail::max_abs_difference(dense, next));
        report.oracle_checked = true;
      }

      const Wavefunction closed = closed_form_state(g, p, pi);
      report.closed_form_worst =
          std::max(report.closed_form_worst, detail::max_abs_difference(next, closed));

      if (keep_operators) {
        result.coins.push_back(coin);
      }
      psi = std::move(next);
      pi = step(p, pi);
      record(psi, pi);
    }
  } catch (const std::exception& e) {
    report.failure = e.what();
  }

  report.passed = report.failure.empty() && report.max_abs_deviation <= tol.matching &&
                  report.unitarity_worst <= tol.unitarity && report.norm_worst <= tol.norm &&
                  report.closed_form_worst <= tol.closed_form &&
                  report.oracle_worst <= tol.oracle;
  return result;
}

}  // namespace qwmatch
