// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace netmeasure {

/// min c^T x  subject to  A x = b,  x >= 0.  A is dense, row-major.
struct LinearProgram {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;

  LinearProgram(std::size_t m, std::size_t n) : rows(m), cols(n), a(m * n, 0.0), b(m, 0.0), c(n, 0.0) {}
  double& at(std::size_t r, std::size_t col) { return a[r * cols + col]; }
};

struct SimplexOptions {
  double cost_tolerance = 1e-12;
  double pivot_tolerance = 1e-10;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  std::size_t degenerate_streak = 50;
  std::size_t max_pivots = 0;  // 0 picks 50 * (rows + cols)
};

struct LpResult {
  enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };
  Status status = Status::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
  std::size_t pivots = 0;
};

/// Dense tableau simplex. When `initial_basis` (one column per row) yields a
/// primal-feasible canonical form it is used directly; otherwise a phase-one
/// problem with artificial columns finds a starting basis.
LpResult solve_lp(const LinearProgram& lp, std::span<const std::size_t> initial_basis = {},
                  const SimplexOptions& options = {});

}  // namespace netmeasure
