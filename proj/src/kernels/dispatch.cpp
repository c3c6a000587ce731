#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kpx/kernels.hpp"

namespace kpx::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(KPX_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa initial_isa() {
  if (const char* forced = std::getenv("KPX_SIMD"); forced != nullptr && *forced != '\0') {
    const std::string_view name(forced);
    if (name == "scalar") return Isa::scalar;
    if (name == "avx2" && supported(Isa::avx2)) return Isa::avx2;
  }
  return detect();
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

bool compiled(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(KPX_HAVE_AVX2)
      return true;
#else
      return false;
#endif
  }
  return false;
}

bool supported(Isa isa) {
  if (isa == Isa::avx2) {
    static const bool has_avx2 = cpu_has_avx2();
    return compiled(isa) && has_avx2;
  }
  return compiled(isa);
}

std::vector<Isa> available() {
  std::vector<Isa> out{Isa::scalar};
  if (supported(Isa::avx2)) {
    out.push_back(Isa::avx2);
  }
  return out;
}

Isa detect() { return supported(Isa::avx2) ? Isa::avx2 : Isa::scalar; }

Isa active_isa() { return current().load(std::memory_order_relaxed); }

const KernelTable& table(Isa isa) {
#if defined(KPX_HAVE_AVX2)
  if (isa == Isa::avx2) {
    return avx2_table();
  }
#endif
  (void)isa;
  return scalar_table();
}

const KernelTable& active() { return table(active_isa()); }

void select(Isa isa) {
  if (!supported(isa)) {
    throw std::invalid_argument("kernel ISA not supported on this machine: " +
                                std::string(to_string(isa)));
  }
  current().store(isa, std::memory_order_relaxed);
}

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

Isa parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::scalar;
  if (name == "avx2") return Isa::avx2;
  throw std::invalid_argument("unknown kernel ISA: " + std::string(name));
}

}  // namespace kpx::kernels
