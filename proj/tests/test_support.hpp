#pragma once

// Oracles and generators shared by the test suites. Everything here stays
// independent of the library's structured evolution path: plain nested-loop
// matvecs and Eigen decompositions only.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qwmatch/matrix.hpp"
#include "qwmatch/random.hpp"

namespace test_support {

using Complex = std::complex<double>;

// Row-major nested-loop matrix-vector product.
inline std::vector<double> dense_apply(const std::vector<std::vector<double>>& rows,
                                       const std::vector<double>& x) {
  std::vector<double> y(rows.size(), 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      y[i] += rows[i][j] * x[j];
    }
  }
  return y;
}

inline std::vector<std::vector<double>> to_rows(const qwmatch::RealMatrix& m) {
  std::vector<std::vector<double>> rows(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      rows[i][j] = m(i, j);
    }
  }
  return rows;
}

inline Eigen::MatrixXd to_eigen(const qwmatch::RealMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(i, j) = m(i, j);
    }
  }
  return out;
}

// Dominant-eigenvector stationary distribution of a column-stochastic matrix.
inline std::vector<double> stationary_distribution(const qwmatch::RealMatrix& p) {
  const Eigen::MatrixXd m = to_eigen(p);
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
  int best = 0;
  double best_distance = std::numeric_limits<double>::max();
  for (int i = 0; i < m.rows(); ++i) {
    const double distance = std::abs(solver.eigenvalues()[i] - Complex(1.0, 0.0));
    if (distance < best_distance) {
      best_distance = distance;
      best = i;
    }
  }
  const Eigen::VectorXd v = solver.eigenvectors().col(best).real();
  const double sum = v.sum();
  std::vector<double> pi(m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    pi[i] = v[i] / sum;
  }
  return pi;
}

// Smallest singular value of the matrix whose columns are the given vectors.
inline double smallest_singular_value(const std::vector<std::vector<Complex>>& columns) {
  const Eigen::Index dim = static_cast<Eigen::Index>(columns.front().size());
  Eigen::MatrixXcd m(dim, static_cast<Eigen::Index>(columns.size()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      m(i, j) = columns[j][i];
    }
  }
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().minCoeff();
}

inline double gaussian(std::mt19937_64& rng) {
  double u1;
  do {
    u1 = qwmatch::detail::uniform01(rng);
  } while (u1 == 0.0);
  const double u2 = qwmatch::detail::uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

// Unit vectors in three flavors: dense complex, real nonnegative (the shape
// actual walk blocks take), and sparse with random support.
inline std::vector<Complex> random_unit_vector(std::mt19937_64& rng, std::size_t dim,
                                               int flavor) {
  std::vector<Complex> v(dim);
  for (;;) {
    for (std::size_t i = 0; i < dim; ++i) {
      switch (flavor % 3) {
        case 0:
          v[i] = Complex(gaussian(rng), gaussian(rng));
          break;
        case 1:
          v[i] = std::sqrt(qwmatch::detail::exponential(rng));
          break;
        default:
          v[i] = qwmatch::detail::uniform_below(rng, 2) == 0
                     ? Complex{}
                     : Complex(gaussian(rng), gaussian(rng));
          break;
      }
    }
    double norm = 0.0;
    for (const Complex& x : v) {
      norm += std::norm(x);
    }
    if (norm > 1e-12) {
      norm = std::sqrt(norm);
      for (Complex& x : v) {
        x /= norm;
      }
      return v;
    }
  }
}

}  // namespace test_support
