// SPDX-License-Identifier: Apache-2.0
#include "netmeasure/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "netmeasure/kernels.hpp"

namespace netmeasure {
namespace {

using Status = LpResult::Status;

// Rows 0..m-1 hold constraints, row m holds reduced costs. The last column is
// the right-hand side (negated objective in the cost row).
class Tableau {
 public:
  Tableau(std::size_t m, std::size_t n) : m_(m), n_(n), w_(n + 1), t_((m + 1) * (n + 1), 0.0), basis_(m, 0) {}

  double& at(std::size_t r, std::size_t c) { return t_[r * w_ + c]; }
  double at(std::size_t r, std::size_t c) const { return t_[r * w_ + c]; }
  double& rhs(std::size_t r) { return t_[r * w_ + n_]; }
  std::span<double> row(std::size_t r) { return {t_.data() + r * w_, w_}; }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    auto prow = row(r);
    const double inv = 1.0 / at(r, c);
    for (double& v : prow) v *= inv;
    at(r, c) = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      kernels::axpy_neg(row(i), prow, f);
      at(i, c) = 0.0;
    }
    if (r < m_) basis_[r] = c;
  }

  // Sets the cost row to c - c_B B^-1 A for the current basis.
  void price(std::span<const double> cost) {
    auto z = row(m_);
    std::fill(z.begin(), z.end(), 0.0);
    for (std::size_t j = 0; j < cost.size(); ++j) z[j] = cost[j];
    for (std::size_t r = 0; r < m_; ++r) {
      const double cb = basis_[r] < cost.size() ? cost[basis_[r]] : 0.0;
      if (cb != 0.0) kernels::axpy_neg(z, row(r), cb);
    }
  }

 private:
  std::size_t m_, n_, w_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
};

// Runs primal simplex iterations on the columns [0, active_cols).
Status iterate(Tableau& t, std::size_t active_cols, const SimplexOptions& opt, std::size_t limit,
               std::size_t& pivots) {
  const std::size_t m = t.rows();
  std::size_t degenerate = 0;
  while (true) {
    const bool bland = degenerate >= opt.degenerate_streak;
    std::optional<std::size_t> enter;
    double best = -opt.cost_tolerance;
    for (std::size_t j = 0; j < active_cols; ++j) {
      const double rc = t.at(m, j);
      if (rc < best) {
        enter = j;
        if (bland) break;
        best = rc;
      }
    }
    if (!enter) return Status::kOptimal;
    if (pivots >= limit) return Status::kIterationLimit;

    std::optional<std::size_t> leave;
    double ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      const double a = t.at(r, *enter);
      if (a <= opt.pivot_tolerance) continue;
      const double q = std::max(t.rhs(r), 0.0) / a;
      if (q < ratio || (q == ratio && leave && t.basis()[r] < t.basis()[*leave])) {
        ratio = q;
        leave = r;
      }
    }
    if (!leave) return Status::kUnbounded;
    degenerate = ratio == 0.0 ? degenerate + 1 : 0;
    t.pivot(*leave, *enter);
    ++pivots;
  }
}

bool install_basis(Tableau& t, std::span<const std::size_t> basis, double tol) {
  for (std::size_t r = 0; r < basis.size(); ++r) {
    if (basis[r] >= t.cols() || std::abs(t.at(r, basis[r])) <= tol) return false;
    t.pivot(r, basis[r]);
  }
  for (std::size_t r = 0; r < t.rows(); ++r) {
    if (t.rhs(r) < -1e-12) return false;
    if (t.rhs(r) < 0.0) t.rhs(r) = 0.0;
  }
  return true;
}

}  // namespace

LpResult solve_lp(const LinearProgram& lp, std::span<const std::size_t> initial_basis,
                  const SimplexOptions& options) {
  const std::size_t m = lp.rows, n = lp.cols;
  const std::size_t limit = options.max_pivots ? options.max_pivots : 50 * (m + n) + 100;
  LpResult result;

  auto load = [&](Tableau& t) {
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < n; ++c) t.at(r, c) = lp.a[r * n + c];
      t.rhs(r) = lp.b[r];
    }
  };

  Tableau direct(m, n);
  load(direct);
  const bool have_basis = initial_basis.size() == m &&
                          install_basis(direct, initial_basis, options.pivot_tolerance);

  if (have_basis) {
    direct.price(lp.c);
    const Status s = iterate(direct, n, options, limit, result.pivots);
    result.status = s;
    if (s == Status::kOptimal || s == Status::kIterationLimit) {
      result.x.assign(n, 0.0);
      for (std::size_t r = 0; r < m; ++r) result.x[direct.basis()[r]] = direct.rhs(r);
      result.objective = -direct.rhs(m);
    }
    return result;
  }

  // Phase one: artificial column per row, rows flipped to b >= 0.
  Tableau t(m, n + m);
  for (std::size_t r = 0; r < m; ++r) {
    const double sign = lp.b[r] < 0.0 ? -1.0 : 1.0;
    for (std::size_t c = 0; c < n; ++c) t.at(r, c) = sign * lp.a[r * n + c];
    t.at(r, n + r) = 1.0;
    t.rhs(r) = sign * lp.b[r];
    t.basis()[r] = n + r;
  }
  std::vector<double> phase_one(n + m, 0.0);
  std::fill(phase_one.begin() + static_cast<std::ptrdiff_t>(n), phase_one.end(), 1.0);
  t.price(phase_one);
  const Status s1 = iterate(t, n + m, options, limit, result.pivots);
  if (s1 == Status::kIterationLimit) {
    result.status = s1;
    return result;
  }
  if (-t.rhs(m) > 1e-9) {
    result.status = Status::kInfeasible;
    return result;
  }
  // Drive remaining artificials out of the basis where possible.
  for (std::size_t r = 0; r < m; ++r) {
    if (t.basis()[r] < n) continue;
    for (std::size_t c = 0; c < n; ++c)
      if (std::abs(t.at(r, c)) > options.pivot_tolerance) {
        t.pivot(r, c);
        break;
      }
  }
  // Rows still carrying an artificial are redundant. Phase two prices only
  // the original columns, so artificials never re-enter.
  std::vector<double> cost(n + m, 0.0);
  std::copy(lp.c.begin(), lp.c.end(), cost.begin());
  t.price(cost);
  const Status s2 = iterate(t, n, options, limit, result.pivots);
  result.status = s2;
  if (s2 == Status::kOptimal || s2 == Status::kIterationLimit) {
    result.x.assign(n, 0.0);
    for (std::size_t r = 0; r < m; ++r)
      if (t.basis()[r] < n) result.x[t.basis()[r]] = t.rhs(r);
    result.objective = -t.rhs(m);
  }
  return result;
}

}  // namespace netmeasure
