#include <doctest.h>

#include <cmath>
#include <vector>

#include "kpx/kernels.hpp"
#include "kpx/model.hpp"
#include "kpx/rng.hpp"

using namespace kpx;

namespace {

std::vector<double> random_vector(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.normal();
  return v;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

struct IsaGuard {
  kernels::Isa saved = kernels::active_isa();
  ~IsaGuard() { kernels::select(saved); }
};

}  // namespace

TEST_CASE("scalar kernels against plain loops") {
  const auto& k = kernels::scalar_table();
  Rng rng(1);
  const std::size_t rows = 5, cols = 7;
  const auto a = random_vector(rng, rows * cols);
  const auto x = random_vector(rng, cols);
  const auto xr = random_vector(rng, rows);

  std::vector<double> y(rows, 1.0), expect(rows, 1.0);
  k.gemv(a.data(), rows, cols, x.data(), y.data());
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) expect[r] += a[r * cols + c] * x[c];
  CHECK(max_abs_diff(y, expect) < 1e-12);

  std::vector<double> yt(cols, 0.0), expect_t(cols, 0.0);
  k.gemv_t(a.data(), rows, cols, xr.data(), yt.data());
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) expect_t[c] += a[r * cols + c] * xr[r];
  CHECK(max_abs_diff(yt, expect_t) < 1e-12);

  auto g = a;
  auto expect_g = a;
  k.ger(g.data(), rows, cols, 0.5, xr.data(), x.data());
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) expect_g[r * cols + c] += 0.5 * xr[r] * x[c];
  CHECK(max_abs_diff(g, expect_g) < 1e-12);

  double d = 0.0;
  for (std::size_t i = 0; i < cols; ++i) d += x[i] * x[i];
  CHECK(std::abs(k.dot(cols, x.data(), x.data()) - d) < 1e-12);
}

TEST_CASE("every available ISA matches the scalar reference") {
  Rng rng(2);
  for (const kernels::Isa isa : kernels::available()) {
    CAPTURE(kernels::to_string(isa));
    const auto& ref = kernels::scalar_table();
    const auto& k = kernels::table(isa);
    // odd sizes exercise the vector tails
    for (const std::size_t rows : {1u, 3u, 4u, 9u, 33u}) {
      for (const std::size_t cols : {1u, 2u, 5u, 8u, 17u, 301u}) {
        const auto a = random_vector(rng, rows * cols);
        const auto x = random_vector(rng, cols);
        const auto xr = random_vector(rng, rows);
        const double tol = 1e-12 * static_cast<double>(cols + rows);

        std::vector<double> y1(rows, 0.25), y2(rows, 0.25);
        ref.gemv(a.data(), rows, cols, x.data(), y1.data());
        k.gemv(a.data(), rows, cols, x.data(), y2.data());
        CHECK(max_abs_diff(y1, y2) <= tol);

        std::vector<double> t1(cols, -1.0), t2(cols, -1.0);
        ref.gemv_t(a.data(), rows, cols, xr.data(), t1.data());
        k.gemv_t(a.data(), rows, cols, xr.data(), t2.data());
        CHECK(max_abs_diff(t1, t2) <= tol);

        auto g1 = a, g2 = a;
        ref.ger(g1.data(), rows, cols, -0.3, xr.data(), x.data());
        k.ger(g2.data(), rows, cols, -0.3, xr.data(), x.data());
        CHECK(max_abs_diff(g1, g2) <= tol);

        auto p1 = x, p2 = x;
        ref.axpy(cols, 1.5, x.data(), p1.data());
        k.axpy(cols, 1.5, x.data(), p2.data());
        CHECK(max_abs_diff(p1, p2) <= tol);

        CHECK(std::abs(ref.dot(cols, a.data(), x.data()) - k.dot(cols, a.data(), x.data())) <= tol);
      }
    }
  }
}

TEST_CASE("network outputs agree across ISAs") {
  IsaGuard guard;
  Rng rng(3);
  Matrix inputs(7, 13);
  for (double& v : inputs.values()) v = rng.normal();
  SequenceTargets targets{{1, 0, 1, 1, 0, 0, 1}, {1, 0, 2, 1, 0, 0, 1}};

  for (const Architecture arch : {Architecture::jrnn, Architecture::rnn, Architecture::lstm}) {
    const NetworkParams params = init_network(arch, 13, 11, 9, 3, 5);
    kernels::select(kernels::Isa::scalar);
    const Matrix ref = tag_distributions(params, inputs);
    for (const kernels::Isa isa : kernels::available()) {
      kernels::select(isa);
      const Matrix got = tag_distributions(params, inputs);
      const std::vector<double> a(ref.values().begin(), ref.values().end());
      const std::vector<double> b(got.values().begin(), got.values().end());
      CHECK(max_abs_diff(a, b) < 1e-12);
    }
  }
}

TEST_CASE("ISA selection") {
  IsaGuard guard;
  CHECK(kernels::supported(kernels::Isa::scalar));
  CHECK(kernels::parse_isa("avx2") == kernels::Isa::avx2);
  CHECK_THROWS_AS(kernels::parse_isa("neon"), std::invalid_argument);
  kernels::select(kernels::Isa::scalar);
  CHECK(kernels::active_isa() == kernels::Isa::scalar);
  CHECK(std::string(kernels::active().name) == "scalar");
  if (!kernels::supported(kernels::Isa::avx2)) {
    CHECK_THROWS_AS(kernels::select(kernels::Isa::avx2), std::invalid_argument);
  }
}
