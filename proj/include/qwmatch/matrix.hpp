#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace qwmatch {

// Dense column-major matrix. Columns are contiguous, so per-column walks
// (stochastic columns, coin-block columns) touch memory linearly.
template <typename Scalar>
class DenseMatrix {
 public:
  DenseMatrix() = default;

  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Scalar{}) {}

  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<Scalar> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw std::invalid_argument("DenseMatrix: data size does not match dimensions");
    }
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = Scalar{1};
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

  std::span<Scalar> col(std::size_t c) { return {data_.data() + c * rows_, rows_}; }
  std::span<const Scalar> col(std::size_t c) const { return {data_.data() + c * rows_, rows_}; }

  std::vector<Scalar>& data() { return data_; }
  const std::vector<Scalar>& data() const { return data_; }

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

using RealMatrix = DenseMatrix<double>;
using ComplexMatrix = DenseMatrix<std::complex<double>>;

template <typename Scalar>
std::vector<Scalar> matvec(const DenseMatrix<Scalar>& m, std::span<const Scalar> x) {
  if (x.size() != m.cols()) {
    throw std::invalid_argument("matvec: dimension mismatch");
  }
  std::vector<Scalar> y(m.rows(), Scalar{});
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const Scalar xc = x[c];
    const auto column = m.col(c);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      y[r] += column[r] * xc;
    }
  }
  return y;
}

}  // namespace qwmatch
