// SPDX-License-Identifier: Apache-2.0
#include "netmeasure/kernels.hpp"

namespace netmeasure::kernels {
namespace {

void axpy_neg_scalar(double* dst, const double* src, double factor, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] -= factor * src[i];
}

WindowSum window_sum_scalar(KernelShape shape, double k0, double radius, const double* y,
                            const double* w, std::size_t n, double s) {
  WindowSum out;
  const double slope = radius > 0.0 ? k0 / radius : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = y[i] - s;
    if (d < 0.0 || d > radius) continue;
    const double k = shape == KernelShape::kLinear ? k0 - d * slope : k0;
    out.value += w[i] * k;
    out.weight += w[i];
  }
  return out;
}

double power_sum_scalar(const double* d, const double* m, std::size_t n, int p) {
  double total = 0.0;
  if (p == 1) {
    for (std::size_t i = 0; i < n; ++i) total += m[i] * d[i];
  } else {
    for (std::size_t i = 0; i < n; ++i) total += m[i] * (d[i] * d[i]);
  }
  return total;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", axpy_neg_scalar, window_sum_scalar, power_sum_scalar};
  return table;
}

}  // namespace netmeasure::kernels
