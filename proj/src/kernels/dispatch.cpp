// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <string_view>

#include "netmeasure/kernels.hpp"

namespace netmeasure::kernels {

#ifdef NETMEASURE_HAVE_AVX2
const KernelTable& avx2_table_unchecked();
#endif

const KernelTable* avx2_table() {
#ifdef NETMEASURE_HAVE_AVX2
  if (__builtin_cpu_supports("avx2")) return &avx2_table_unchecked();
#endif
  return nullptr;
}

const KernelTable& active() {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    const char* env = std::getenv("NETMEASURE_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar_table();
    if (const KernelTable* t = avx2_table()) return *t;
    return scalar_table();
  }();
  return chosen;
}

}  // namespace netmeasure::kernels
