#pragma once

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

namespace qwmatch {

using Amplitude = std::complex<double>;

// Walker state: one complex amplitude per flat edge state (v, c).
struct Wavefunction {
  std::vector<Amplitude> amplitudes;

  std::size_t size() const { return amplitudes.size(); }

  double norm() const {
    double sum = 0.0;
    for (const Amplitude& a : amplitudes) {
      sum += std::norm(a);
    }
    return std::sqrt(sum);
  }
};

// Flip-flop shift: the edge state for (u, v) swaps with the one for (v, u).
// Stored as the image of each flat index; an involution by construction.
struct ShiftPermutation {
  std::vector<std::size_t> permutation;

  Wavefunction apply(const Wavefunction& psi) const {
    if (psi.size() != permutation.size()) {
      throw std::invalid_argument("ShiftPermutation::apply: dimension mismatch");
    }
    Wavefunction out;
    out.amplitudes.resize(psi.size());
    for (std::size_t i = 0; i < permutation.size(); ++i) {
      out.amplitudes[permutation[i]] = psi.amplitudes[i];
    }
    return out;
  }

  bool is_involution() const {
    for (std::size_t i = 0; i < permutation.size(); ++i) {
      if (permutation[i] >= permutation.size() || permutation[permutation[i]] != i) {
        return false;
      }
    }
    return true;
  }
};

// Block-diagonal coin: one dense d(v) x d(v) unitary per vertex, laid out in
// vertex order. Block sizes fix the flat offsets.
struct CoinOperator {
  std::vector<ComplexMatrix> blocks;

  std::size_t dimension() const {
    std::size_t dim = 0;
    for (const ComplexMatrix& b : blocks) {
      dim += b.rows();
    }
    return dim;
  }

  Wavefunction apply(const Wavefunction& psi) const {
    if (psi.size() != dimension()) {
      throw std::invalid_argument("CoinOperator::apply: dimension mismatch");
    }
    Wavefunction out;
    out.amplitudes.assign(psi.size(), Amplitude{});
    std::size_t offset = 0;
    for (const ComplexMatrix& b : blocks) {
      const std::size_t d = b.rows();
      for (std::size_t j = 0; j < d; ++j) {
        const Amplitude x = psi.amplitudes[offset + j];
        if (x == Amplitude{}) {
          continue;
        }
        const auto column = b.col(j);
        for (std::size_t i = 0; i < d; ++i) {
          out.amplitudes[offset + i] += column[i] * x;
        }
      }
      offset += d;
    }
    return out;
  }
};

enum class PhaseConvention { FixedZero };
enum class DegeneratePolicy { IdentityCoin };

// Construction knobs. Phases are fixed to zero: every constructed amplitude
// is real nonnegative and the post-step state equals the closed form, which
// is what the verifier checks. gs_tolerance is the threshold below which an
// amplitude or residual counts as structurally zero.
struct BuildConfig {
  PhaseConvention phase_convention = PhaseConvention::FixedZero;
  DegeneratePolicy degenerate_policy = DegeneratePolicy::IdentityCoin;
  double gs_tolerance = 1e-12;
};

inline ShiftPermutation build_shift(const Graph& g) {
  ShiftPermutation s;
  s.permutation.resize(g.edge_state_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    for (int c = 0; c < g.degree(v); ++c) {
      const int u = g.eta(v, c);
      s.permutation[g.edge_state_index(v, c)] = g.edge_state_index(u, g.sigma(v, u));
    }
  }
  return s;
}

// State at t = 0: amplitude sqrt(pi_v / d(v)) on every coin of v, spreading
// each vertex's mass uniformly over its block.
inline Wavefunction initial_state(const Graph& g, const ProbabilityVector& pi0) {
  if (pi0.size() != g.vertex_count()) {
    throw std::invalid_argument("initial_state: dimension mismatch");
  }
  Wavefunction psi;
  psi.amplitudes.assign(g.edge_state_count(), Amplitude{});
  for (int v = 0; v < g.vertex_count(); ++v) {
    const double a = std::sqrt(pi0[v] / g.degree(v));
    for (int c = 0; c < g.degree(v); ++c) {
      psi.amplitudes[g.edge_state_index(v, c)] = a;
    }
  }
  return psi;
}

// Closed form of the representation state one step after (p_prev, pi_prev):
// amplitude sqrt(p_vu) * sqrt(pi_u) on |v, c'> with u = eta(v, c'). Its
// vertex marginals equal step(p_prev, pi_prev), and the constructed walk
// step must reproduce it entrywise.
inline Wavefunction closed_form_state(const Graph& g, const RealMatrix& p_prev,
                                      const ProbabilityVector& pi_prev) {
  const int n = g.vertex_count();
  if (pi_prev.size() != n || p_prev.rows() != static_cast<std::size_t>(n) ||
      p_prev.cols() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("closed_form_state: dimension mismatch");
  }
  Wavefunction psi;
  psi.amplitudes.assign(g.edge_state_count(), Amplitude{});
  for (int v = 0; v < n; ++v) {
    for (int c = 0; c < g.degree(v); ++c) {
      const int u = g.eta(v, c);
      psi.amplitudes[g.edge_state_index(v, c)] = std::sqrt(p_prev(v, u)) * std::sqrt(pi_prev[u]);
    }
  }
  return psi;
}

// Per-vertex target the coin must send v's block to before the shift:
// entry c' is sqrt(p_uv) * sqrt(pi_v) with u = eta(v, c'). Its squared norm
// is pi_v (the column over u sums to 1).
inline std::vector<Amplitude> coin_target(const Graph& g, int v, const RealMatrix& p_t,
                                          const ProbabilityVector& pi_t) {
  const int n = g.vertex_count();
  if (pi_t.size() != n || p_t.rows() != static_cast<std::size_t>(n) ||
      p_t.cols() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("coin_target: dimension mismatch");
  }
  std::vector<Amplitude> phi(g.degree(v));
  const double mass = std::sqrt(pi_t[v]);
  for (int c = 0; c < g.degree(v); ++c) {
    const int u = g.eta(v, c);
    phi[c] = std::sqrt(p_t(u, v)) * mass;
  }
  return phi;
}

// The d(v) amplitudes of vertex v's coin block.
inline std::vector<Amplitude> vertex_block(const Graph& g, const Wavefunction& psi, int v) {
  if (psi.size() != g.edge_state_count()) {
    throw std::invalid_argument("vertex_block: dimension mismatch");
  }
  const std::size_t offset = g.block_offset(v);
  return {psi.amplitudes.begin() + offset, psi.amplitudes.begin() + offset + g.degree(v)};
}

// Vertex marginals mu_v = sum_c |psi(v, c)|^2.
inline ProbabilityVector vertex_probabilities(const Graph& g, const Wavefunction& psi) {
  if (psi.size() != g.edge_state_count()) {
    throw std::invalid_argument("vertex_probabilities: dimension mismatch");
  }
  std::vector<double> mu(g.vertex_count(), 0.0);
  for (int v = 0; v < g.vertex_count(); ++v) {
    const std::size_t offset = g.block_offset(v);
    for (int c = 0; c < g.degree(v); ++c) {
      mu[v] += std::norm(psi.amplitudes[offset + c]);
    }
  }
  return ProbabilityVector(std::move(mu), 1e-10);
}

namespace detail {

inline double norm_of(const std::vector<Amplitude>& x) {
  double sum = 0.0;
  for (const Amplitude& a : x) {
    sum += std::norm(a);
  }
  return std::sqrt(sum);
}

inline Amplitude inner(const std::vector<Amplitude>& a, const std::vector<Amplitude>& b) {
  Amplitude sum{};
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += std::conj(a[i]) * b[i];
  }
  return sum;
}

}  // namespace detail

// Linearly independent set anchored at a nonzero vector a: a itself, every
// basis vector orthogonal to a (overlap below tol), then the remaining basis
// vectors minus the one a overlaps most (ties broken toward the smallest
// coin index). Always spans the block: size equals dim(a).
inline std::vector<std::vector<Amplitude>> independent_set(const std::vector<Amplitude>& a,
                                                           double tol) {
  const std::size_t dim = a.size();
  if (dim == 0) {
    throw std::invalid_argument("independent_set: empty vector");
  }
  if (detail::norm_of(a) <= tol) {
    throw std::invalid_argument("independent_set: input vector is numerically zero");
  }

  std::size_t drop = 0;
  double best = -1.0;
  for (std::size_t c = 0; c < dim; ++c) {
    const double overlap = std::abs(a[c]);
    if (overlap > best) {
      best = overlap;
      drop = c;
    }
  }

  std::vector<std::vector<Amplitude>> set;
  set.reserve(dim);
  set.push_back(a);
  for (std::size_t c = 0; c < dim; ++c) {  // basis vectors orthogonal to a
    if (c != drop && std::abs(a[c]) <= tol) {
      std::vector<Amplitude> e(dim, Amplitude{});
      e[c] = 1.0;
      set.push_back(std::move(e));
    }
  }
  for (std::size_t c = 0; c < dim; ++c) {  // the rest, except the dropped one
    if (c != drop && std::abs(a[c]) > tol) {
      std::vector<Amplitude> e(dim, Amplitude{});
      e[c] = 1.0;
      set.push_back(std::move(e));
    }
  }
  return set;
}

// Modified Gram-Schmidt with one re-orthogonalization pass. The first output
// is the normalized first input. Throws if a residual collapses below tol,
// which means the input set was numerically dependent.
inline std::vector<std::vector<Amplitude>> gram_schmidt(
    const std::vector<std::vector<Amplitude>>& vectors, double tol) {
  std::vector<std::vector<Amplitude>> basis;
  basis.reserve(vectors.size());
  for (const std::vector<Amplitude>& input : vectors) {
    std::vector<Amplitude> v = input;
    for (int pass = 0; pass < 2; ++pass) {
      for (const std::vector<Amplitude>& q : basis) {
        const Amplitude coeff = detail::inner(q, v);
        for (std::size_t i = 0; i < v.size(); ++i) {
          v[i] -= coeff * q[i];
        }
      }
    }
    const double r = detail::norm_of(v);
    if (r <= tol) {
      throw std::runtime_error("gram_schmidt: residual " + std::to_string(r) +
                               " below tolerance; input set is numerically dependent");
    }
    for (Amplitude& x : v) {
      x /= r;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace detail {

inline std::vector<Amplitude> normalized(const std::vector<Amplitude>& x) {
  const double r = norm_of(x);
  std::vector<Amplitude> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = x[i] / r;
  }
  return out;
}

}  // namespace detail

// One coin block: the unitary sending psi_v to phi_v, assembled as
// sum_k |alpha_k><beta_k| from orthonormal bases anchored at the normalized
// psi_v and phi_v. Degenerate blocks (no mass at the vertex) get the
// identity.
inline ComplexMatrix coin_block(const std::vector<Amplitude>& psi_v,
                                const std::vector<Amplitude>& phi_v,
                                const BuildConfig& cfg = {}) {
  if (psi_v.size() != phi_v.size()) {
    throw std::invalid_argument("coin_block: dimension mismatch");
  }
  if (!(cfg.gs_tolerance > 0.0)) {
    throw std::invalid_argument("coin_block: gs_tolerance must be positive");
  }
  const std::size_t dim = psi_v.size();
  const double psi_norm = detail::norm_of(psi_v);
  const double phi_norm = detail::norm_of(phi_v);
  if (std::abs(psi_norm * psi_norm - phi_norm * phi_norm) > 1e-10) {
    throw std::invalid_argument("coin_block: |psi_v|^2 and |phi_v|^2 differ beyond tolerance ("
                                + std::to_string(psi_norm * psi_norm) + " vs " +
                                std::to_string(phi_norm * phi_norm) + ")");
  }
  if (psi_norm <= cfg.gs_tolerance) {
    return ComplexMatrix::identity(dim);
  }

  const auto beta =
      gram_schmidt(independent_set(detail::normalized(psi_v), cfg.gs_tolerance), cfg.gs_tolerance);
  const auto alpha =
      gram_schmidt(independent_set(detail::normalized(phi_v), cfg.gs_tolerance), cfg.gs_tolerance);

  ComplexMatrix w(dim, dim);
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t j = 0; j < dim; ++j) {
      const Amplitude bkj = std::conj(beta[k][j]);
      if (bkj == Amplitude{}) {
        continue;
      }
      for (std::size_t i = 0; i < dim; ++i) {
        w(i, j) += alpha[k][i] * bkj;
      }
    }
  }
  return w;
}

// Coin operator for one step: per-vertex blocks mapping the current block of
// psi to the target built from (P(t), pi(t)).
inline CoinOperator build_coin(const Graph& g, const Wavefunction& psi, const RealMatrix& p_t,
                               const ProbabilityVector& pi_t, const BuildConfig& cfg = {}) {
  const ProbabilityVector mu = vertex_probabilities(g, psi);
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (std::abs(mu[v] - pi_t[v]) > 1e-10) {
      throw std::invalid_argument("build_coin: vertex probabilities of psi deviate from pi at "
                                  "vertex " + std::to_string(v));
    }
  }
  CoinOperator coin;
  coin.blocks.reserve(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    coin.blocks.push_back(coin_block(vertex_block(g, psi, v), coin_target(g, v, p_t, pi_t), cfg));
  }
  return coin;
}

// One walk step: coin, then shift.
inline Wavefunction qw_step(const Wavefunction& psi, const ShiftPermutation& shift,
                            const CoinOperator& coin) {
  return shift.apply(coin.apply(psi));
}

}  // namespace qwmatch
