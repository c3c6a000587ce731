#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kpx {

// Row-major dense matrix of doubles. Biases and per-step activations are
// stored as matrices too (n x 1 and T x n respectively).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  void fill(double value);
  bool same_shape(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Thin span wrappers over the active kernel table. Shapes are checked with
// assertions only; callers validate dimensions at module boundaries.

// y += A x
void multiply_add(const Matrix& a, std::span<const double> x, std::span<double> y);
// y += A^T x
void multiply_transposed_add(const Matrix& a, std::span<const double> x, std::span<double> y);
// A += alpha x y^T
void outer_add(Matrix& a, double alpha, std::span<const double> x, std::span<const double> y);
// y += alpha x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> x, std::span<const double> y);

}  // namespace kpx
