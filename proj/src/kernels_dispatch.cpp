#include "addbasis/kernels.hpp"

#include <cstdlib>

namespace addbasis {
namespace kern {

const Kernels* avx2_impl();  // defined in kernels_avx2.cpp (or stub)

const Kernels* avx2() {
#if defined(__x86_64__) || defined(__i386__)
  if (!__builtin_cpu_supports("avx2")) return nullptr;
#endif
  return avx2_impl();
}

const Kernels& active() {
  static const Kernels* chosen = [] {
    const char* force = std::getenv("ADDBASIS_FORCE_SCALAR");
    if (force && force[0] == '1') return &scalar();
    if (const Kernels* k = avx2()) return k;
    return &scalar();
  }();
  return *chosen;
}

}  // namespace kern
}  // namespace addbasis
