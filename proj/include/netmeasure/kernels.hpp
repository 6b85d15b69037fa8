// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string_view>

namespace netmeasure::kernels {

enum class KernelShape { kConstant, kLinear };

/// Result of a windowed kernel sum: the kernel-weighted total and the plain
/// weight total over the same window.
struct WindowSum {
  double value = 0.0;
  double weight = 0.0;
};

/// Function table for one instruction set. Every variant computes the same
/// quantities; reductions may differ from the scalar reference in rounding.
struct KernelTable {
  std::string_view name;

  /// dst[i] -= factor * src[i]. Bit-identical across variants.
  void (*axpy_neg)(double* dst, const double* src, double factor, std::size_t n);

  /// Sums w_i * k(y_i - s) over 0 <= y_i - s <= radius, with
  /// k(d) = k0 (constant) or k0 * (1 - d / radius) (linear).
  WindowSum (*window_sum)(KernelShape shape, double k0, double radius, const double* y,
                          const double* w, std::size_t n, double s);

  /// Sums m_i * d_i^p for p in {1, 2}.
  double (*power_sum)(const double* d, const double* m, std::size_t n, int p);
};

const KernelTable& scalar_table();
/// Null when the AVX2 variant was not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_table();

/// Table chosen at first use: AVX2 when available, unless the environment
/// variable NETMEASURE_SIMD is set to "scalar".
const KernelTable& active();

inline void axpy_neg(std::span<double> dst, std::span<const double> src, double factor) {
  active().axpy_neg(dst.data(), src.data(), factor, dst.size());
}

inline WindowSum window_sum(KernelShape shape, double k0, double radius,
                            std::span<const double> y, std::span<const double> w, double s) {
  return active().window_sum(shape, k0, radius, y.data(), w.data(), y.size(), s);
}

inline double power_sum(std::span<const double> d, std::span<const double> m, int p) {
  return active().power_sum(d.data(), m.data(), d.size(), p);
}

}  // namespace netmeasure::kernels
