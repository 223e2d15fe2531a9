#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qwmatch/graph.hpp"
#include "qwmatch/matrix.hpp"
#include "qwmatch/random.hpp"

namespace qwmatch {

// Distribution over vertices. Entries are validated on construction:
// nonnegative and summing to 1 within sum_tolerance.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> entries, double sum_tolerance = 1e-12)
      : entries_(std::move(entries)) {
    double sum = 0.0;
    for (std::size_t v = 0; v < entries_.size(); ++v) {
      if (!(entries_[v] >= 0.0)) {
        throw std::invalid_argument("ProbabilityVector: negative entry at vertex " +
                                    std::to_string(v));
      }
      sum += entries_[v];
    }
    if (std::abs(sum - 1.0) > sum_tolerance) {
      throw std::invalid_argument("ProbabilityVector: entries sum to " + std::to_string(sum) +
                                  ", not 1");
    }
  }

  static ProbabilityVector point_mass(int n, int v) {
    if (v < 0 || v >= n) {
      throw std::invalid_argument("point_mass: vertex out of range");
    }
    std::vector<double> e(n, 0.0);
    e[v] = 1.0;
    return ProbabilityVector(std::move(e));
  }

  static ProbabilityVector uniform(int n) {
    if (n <= 0) {
      throw std::invalid_argument("uniform: need at least one vertex");
    }
    return ProbabilityVector(std::vector<double>(n, 1.0 / n));
  }

  int size() const { return static_cast<int>(entries_.size()); }
  double operator[](int v) const { return entries_[v]; }
  const std::vector<double>& entries() const { return entries_; }

  bool operator==(const ProbabilityVector&) const = default;

 private:
  std::vector<double> entries_;
};

// Column-stochastic matrix with support restricted to the graph's adjacency,
// filled Dirichlet-style: one positive draw per neighbor, normalized per
// column. Deterministic in the seed.
inline RealMatrix random_stochastic_matrix(const Graph& g, std::uint64_t seed) {
  const int n = g.vertex_count();
  RealMatrix p(n, n);
  std::mt19937_64 rng(detail::mix64(seed));
  for (int u = 0; u < n; ++u) {
    double sum = 0.0;
    const auto nu = g.neighbors(u);
    std::vector<double> draws(nu.size());
    for (std::size_t i = 0; i < nu.size(); ++i) {
      draws[i] = detail::exponential(rng);
      sum += draws[i];
    }
    for (std::size_t i = 0; i < nu.size(); ++i) {
      p(nu[i], u) = draws[i] / sum;
    }
  }
  return p;
}

// Time-indexed transition matrices P(t). Three modes: one matrix reused
// forever, an explicit finite sequence, or a seeded per-step generator.
class StochasticSchedule {
 public:
  enum class Mode { Homogeneous, Sequence, Generator };

  static StochasticSchedule homogeneous(RealMatrix p) {
    StochasticSchedule s;
    s.mode_ = Mode::Homogeneous;
    s.dimension_ = static_cast<int>(p.rows());
    s.matrices_.push_back(std::move(p));
    return s;
  }

  static StochasticSchedule sequence(std::vector<RealMatrix> ps) {
    if (ps.empty()) {
      throw std::invalid_argument("StochasticSchedule: empty sequence");
    }
    StochasticSchedule s;
    s.mode_ = Mode::Sequence;
    s.dimension_ = static_cast<int>(ps.front().rows());
    s.matrices_ = std::move(ps);
    return s;
  }

  static StochasticSchedule random_generator(Graph g, std::uint64_t seed) {
    StochasticSchedule s;
    s.mode_ = Mode::Generator;
    s.dimension_ = g.vertex_count();
    s.graph_ = std::move(g);
    s.seed_ = seed;
    return s;
  }

  Mode mode() const { return mode_; }
  int dimension() const { return dimension_; }
  std::uint64_t seed() const { return seed_; }

  // Number of steps the schedule can supply; nullopt means unbounded.
  std::optional<int> length() const {
    if (mode_ == Mode::Sequence) {
      return static_cast<int>(matrices_.size());
    }
    return std::nullopt;
  }

  RealMatrix matrix_at(int t) const {
    if (t < 0) {
      throw std::out_of_range("matrix_at: negative time");
    }
    switch (mode_) {
      case Mode::Homogeneous:
        return matrices_.front();
      case Mode::Sequence:
        if (static_cast<std::size_t>(t) >= matrices_.size()) {
          throw std::out_of_range("matrix_at: schedule exhausted at t=" + std::to_string(t) +
                                  " (sequence length " + std::to_string(matrices_.size()) + ")");
        }
        return matrices_[t];
      case Mode::Generator:
        return random_stochastic_matrix(graph_, detail::mix64(seed_) ^ detail::mix64(t + 1));
    }
    throw std::logic_error("matrix_at: invalid mode");
  }

 private:
  StochasticSchedule() = default;

  Mode mode_ = Mode::Homogeneous;
  int dimension_ = 0;
  std::vector<RealMatrix> matrices_;
  Graph graph_;          // generator mode only
  std::uint64_t seed_ = 0;
};

enum class ViolationKind { ColumnSum, Adjacency, EntryRange, Dimension, Exhausted };

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::ColumnSum: return "column-sum";
    case ViolationKind::Adjacency: return "adjacency";
    case ViolationKind::EntryRange: return "entry-range";
    case ViolationKind::Dimension: return "dimension";
    case ViolationKind::Exhausted: return "exhausted";
  }
  return "unknown";
}

struct ScheduleViolation {
  int t = 0;
  int column = -1;        // -1 when not column-specific
  ViolationKind kind = ViolationKind::ColumnSum;
  double magnitude = 0.0; // deficit or offending value
  std::string detail;
};

struct ValidationReport {
  std::vector<ScheduleViolation> violations;

  bool ok() const { return violations.empty(); }
};

// Checks every P(t) for t in 0..horizon-1: column sums within tolerance of 1,
// entries in [0, 1], support only on edges of g. Violations are collected,
// not thrown; callers decide whether to abort.
inline ValidationReport validate_schedule(const StochasticSchedule& s, const Graph& g,
                                          int horizon, double tolerance = 1e-12) {
  ValidationReport report;
  const int n = g.vertex_count();
  if (s.dimension() != n) {
    report.violations.push_back({0, -1, ViolationKind::Dimension,
                                 static_cast<double>(s.dimension()),
                                 "schedule dimension " + std::to_string(s.dimension()) +
                                     " does not match vertex count " + std::to_string(n)});
    return report;
  }
  for (int t = 0; t < horizon; ++t) {
    RealMatrix p;
    try {
      p = s.matrix_at(t);
    } catch (const std::out_of_range& e) {
      report.violations.push_back({t, -1, ViolationKind::Exhausted, 0.0, e.what()});
      break;
    }
    if (p.rows() != static_cast<std::size_t>(n) || p.cols() != static_cast<std::size_t>(n)) {
      report.violations.push_back({t, -1, ViolationKind::Dimension,
                                   static_cast<double>(p.rows()),
                                   "matrix at t=" + std::to_string(t) + " is not " +
                                       std::to_string(n) + "x" + std::to_string(n)});
      continue;
    }
    for (int u = 0; u < n; ++u) {
      double sum = 0.0;
      for (int v = 0; v < n; ++v) {
        const double entry = p(v, u);
        sum += entry;
        if (entry < 0.0 || entry > 1.0) {
          report.violations.push_back({t, u, ViolationKind::EntryRange, entry,
                                       "entry (" + std::to_string(v) + "," + std::to_string(u) +
                                           ") outside [0,1]"});
        }
        if (entry != 0.0) {
          const auto nu = g.neighbors(u);
          if (!std::binary_search(nu.begin(), nu.end(), v)) {
            report.violations.push_back({t, u, ViolationKind::Adjacency, entry,
                                         "nonzero entry (" + std::to_string(v) + "," +
                                             std::to_string(u) + ") off the adjacency support"});
          }
        }
      }
      if (std::abs(sum - 1.0) > tolerance) {
        report.violations.push_back({t, u, ViolationKind::ColumnSum, 1.0 - sum,
                                     "column " + std::to_string(u) + " sums to " +
                                         std::to_string(sum)});
      }
    }
  }
  return report;
}

// One walk step: pi'_v = sum_u p_vu * pi_u.
inline ProbabilityVector step(const RealMatrix& p, const ProbabilityVector& pi) {
  const std::size_t n = p.rows();
  if (p.cols() != n || static_cast<std::size_t>(pi.size()) != n) {
    throw std::invalid_argument("step: dimension mismatch");
  }
  std::vector<double> next(n, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    const double mass = pi[static_cast<int>(u)];
    if (mass == 0.0) {
      continue;
    }
    const auto column = p.col(u);
    for (std::size_t v = 0; v < n; ++v) {
      next[v] += column[v] * mass;
    }
  }
  return ProbabilityVector(std::move(next));
}

// Trajectory pi(0)..pi(T).
inline std::vector<ProbabilityVector> evolve(const StochasticSchedule& s,
                                             const ProbabilityVector& pi0, int horizon) {
  if (horizon < 0) {
    throw std::invalid_argument("evolve: negative horizon");
  }
  std::vector<ProbabilityVector> trajectory;
  trajectory.reserve(horizon + 1);
  trajectory.push_back(pi0);
  for (int t = 0; t < horizon; ++t) {
    trajectory.push_back(step(s.matrix_at(t), trajectory.back()));
  }
  return trajectory;
}

}  // namespace qwmatch
