// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "netmeasure/types.hpp"

namespace netmeasure {

/// Right-continuous step function of time. values[0] holds on
/// (-inf, breakpoints[0]), values[i] on [breakpoints[i-1], breakpoints[i]).
/// Requires values.size() == breakpoints.size() + 1.
class PiecewiseConstant {
 public:
  PiecewiseConstant() : values_{0.0} {}
  explicit PiecewiseConstant(double value) : values_{value} {}
  PiecewiseConstant(std::vector<double> breakpoints, std::vector<double> values);

  double operator()(double t) const;
  /// Integral over [a, b).
  double integral(double a, double b) const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  bool is_zero() const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// Continuous piecewise-linear function through sorted knots, held constant
/// outside the knot range.
class PiecewiseLinear {
 public:
  struct Knot {
    double x;
    double y;
  };

  PiecewiseLinear() : knots_{{0.0, 0.0}} {}
  explicit PiecewiseLinear(double constant) : knots_{{0.0, constant}} {}
  explicit PiecewiseLinear(std::vector<Knot> knots);

  double operator()(double x) const;
  const std::vector<Knot>& knots() const { return knots_; }
  double max_value() const;
  double min_value() const;

 private:
  std::vector<Knot> knots_;
};

}  // namespace netmeasure
