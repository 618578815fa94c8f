#include "widthbright/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <string_view>

namespace wb::simd {

#if defined(WIDTHBRIGHT_BUILD_AVX2)
const Kernels& avx2_kernel_table();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(WIDTHBRIGHT_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Kernels* initial_choice() {
  const Kernels* best = avx2_kernels() ? avx2_kernels() : &scalar_kernels();
  if (const char* env = std::getenv("WIDTHBRIGHT_SIMD")) {
    const std::string_view want(env);
    if (want == "scalar") return &scalar_kernels();
    if (want == "avx2" && avx2_kernels()) return avx2_kernels();
  }
  return best;
}

std::atomic<const Kernels*>& current() {
  static std::atomic<const Kernels*> k{initial_choice()};
  return k;
}

}  // namespace

const Kernels* avx2_kernels() {
#if defined(WIDTHBRIGHT_BUILD_AVX2)
  static const bool ok = cpu_has_avx2();
  return ok ? &avx2_kernel_table() : nullptr;
#else
  return nullptr;
#endif
}

const Kernels& active() { return *current().load(std::memory_order_relaxed); }

bool set_active(Isa isa) {
  const Kernels* k = isa == Isa::avx2 ? avx2_kernels() : &scalar_kernels();
  if (k == nullptr) return false;
  current().store(k, std::memory_order_relaxed);
  return true;
}

std::string_view isa_name(Isa isa) {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

}  // namespace wb::simd
