#include <cstdlib>
#include <cstring>

#include "kernels_impl.hpp"

namespace cslab::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable kScalar{"scalar", scalar::cmul, scalar::abs2, scalar::caxpy, scalar::cdot,
                          scalar::correlate};
const KernelTable kAvx2{"avx2", avx2::cmul, avx2::abs2, avx2::caxpy, avx2::cdot,
                        avx2::correlate};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
  static const bool ok = avx2::compiled() && cpu_has_avx2();
  return ok ? &kAvx2 : nullptr;
}

const KernelTable& active() {
  static const KernelTable* chosen = [] {
    const char* env = std::getenv("CSLAB_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return &kScalar;
    const KernelTable* v = avx2_table();
    return v != nullptr ? v : &kScalar;
  }();
  return *chosen;
}

}  // namespace cslab::kernels
