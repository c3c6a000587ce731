#pragma once

// Dense double-precision kernels behind the network code. Each kernel has a
// scalar reference implementation and, on x86-64, an AVX2/FMA variant. The
// active table is picked once at startup from CPUID and can be overridden
// with select() or the KPX_SIMD environment variable ("scalar" | "avx2").
//
// All matrices are row-major and contiguous.

#include <cstddef>
#include <string_view>
#include <vector>

namespace kpx::kernels {

enum class Isa { scalar, avx2 };

struct KernelTable {
  const char* name;
  // y[r] += sum_c a[r*cols + c] * x[c]
  void (*gemv)(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
  // y[c] += sum_r a[r*cols + c] * x[r]
  void (*gemv_t)(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
  // a[r*cols + c] += alpha * x[r] * y[c]
  void (*ger)(double* a, std::size_t rows, std::size_t cols, double alpha, const double* x,
              const double* y);
  // y[i] += alpha * x[i]
  void (*axpy)(std::size_t n, double alpha, const double* x, double* y);
  double (*dot)(std::size_t n, const double* x, const double* y);
};

const KernelTable& scalar_table();
#if defined(KPX_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

bool compiled(Isa isa);
bool supported(Isa isa);  // compiled in and available on this CPU
std::vector<Isa> available();

Isa detect();
Isa active_isa();
const KernelTable& active();
const KernelTable& table(Isa isa);

// Throws std::invalid_argument if the ISA is not supported here.
void select(Isa isa);

std::string_view to_string(Isa isa);
Isa parse_isa(std::string_view name);

}  // namespace kpx::kernels
