#include "kpx/linalg.hpp"

#include <algorithm>
#include <cassert>

#include "kpx/kernels.hpp"

namespace kpx {

void Matrix::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

void multiply_add(const Matrix& a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == a.cols() && y.size() == a.rows());
  kernels::active().gemv(a.data(), a.rows(), a.cols(), x.data(), y.data());
}

void multiply_transposed_add(const Matrix& a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == a.rows() && y.size() == a.cols());
  kernels::active().gemv_t(a.data(), a.rows(), a.cols(), x.data(), y.data());
}

void outer_add(Matrix& a, double alpha, std::span<const double> x, std::span<const double> y) {
  assert(x.size() == a.rows() && y.size() == a.cols());
  kernels::active().ger(a.data(), a.rows(), a.cols(), alpha, x.data(), y.data());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  kernels::active().axpy(x.size(), alpha, x.data(), y.data());
}

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  return kernels::active().dot(x.size(), x.data(), y.data());
}

}  // namespace kpx
