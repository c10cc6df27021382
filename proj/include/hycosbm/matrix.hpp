#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hycosbm {

/// Dense row-major matrix of doubles. Rows are exposed as spans so that
/// per-node membership vectors can be passed around without copies.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  void fill(double v) { data_.assign(data_.size(), v); }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// x^T M y for square M.
inline double bilinear(std::span<const double> x, const Matrix& m, std::span<const double> y) {
  double total = 0.0;
  for (std::size_t k = 0; k < m.rows(); ++k) {
    if (x[k] == 0.0) continue;
    double inner = 0.0;
    for (std::size_t q = 0; q < m.cols(); ++q) inner += m(k, q) * y[q];
    total += x[k] * inner;
  }
  return total;
}

/// out = M x for square M.
inline void mat_vec(const Matrix& m, std::span<const double> x, std::span<double> out) {
  for (std::size_t k = 0; k < m.rows(); ++k) {
    double s = 0.0;
    for (std::size_t q = 0; q < m.cols(); ++q) s += m(k, q) * x[q];
    out[k] = s;
  }
}

}  // namespace hycosbm
