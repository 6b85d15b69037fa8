// SPDX-License-Identifier: Apache-2.0
#include "netmeasure/piecewise.hpp"

#include <algorithm>
#include <cmath>

namespace netmeasure {

PiecewiseConstant::PiecewiseConstant(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (values_.size() != breakpoints_.size() + 1)
    throw Error("piecewise-constant function needs one more value than breakpoints");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (!std::isfinite(breakpoints_[i])) throw Error("breakpoints must be finite");
    if (i > 0 && !(breakpoints_[i] > breakpoints_[i - 1]))
      throw Error("breakpoints must be strictly increasing");
  }
}

double PiecewiseConstant::operator()(double t) const {
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

double PiecewiseConstant::integral(double a, double b) const {
  if (!(b > a)) return 0.0;
  double total = 0.0;
  double lo = a;
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), a);
  std::size_t piece = static_cast<std::size_t>(it - breakpoints_.begin());
  while (lo < b) {
    const double hi = piece < breakpoints_.size() ? std::min(b, breakpoints_[piece]) : b;
    total += values_[piece] * (hi - lo);
    lo = hi;
    ++piece;
  }
  return total;
}

bool PiecewiseConstant::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

PiecewiseLinear::PiecewiseLinear(std::vector<Knot> knots) : knots_(std::move(knots)) {
  if (knots_.empty()) throw Error("piecewise-linear function needs at least one knot");
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!std::isfinite(knots_[i].x) || !std::isfinite(knots_[i].y))
      throw Error("piecewise-linear knots must be finite");
    if (i > 0 && !(knots_[i].x > knots_[i - 1].x))
      throw Error("piecewise-linear knots must be strictly increasing in x");
  }
}

double PiecewiseLinear::operator()(double x) const {
  if (x <= knots_.front().x) return knots_.front().y;
  if (x >= knots_.back().x) return knots_.back().y;
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                                   [](double v, const Knot& k) { return v < k.x; });
  const Knot& r = *it;
  const Knot& l = *(it - 1);
  return l.y + (r.y - l.y) * (x - l.x) / (r.x - l.x);
}

double PiecewiseLinear::max_value() const {
  return std::max_element(knots_.begin(), knots_.end(),
                          [](const Knot& a, const Knot& b) { return a.y < b.y; })
      ->y;
}

double PiecewiseLinear::min_value() const {
  return std::min_element(knots_.begin(), knots_.end(),
                          [](const Knot& a, const Knot& b) { return a.y < b.y; })
      ->y;
}

}  // namespace netmeasure
