// SPDX-License-Identifier: Apache-2.0
#include "netmeasure/speed_profile.hpp"

#include <algorithm>
#include <cmath>

namespace netmeasure {

SpeedProfile::SpeedProfile(double length, std::vector<Piece> pieces)
    : length_(length), pieces_(std::move(pieces)) {
  if (!(length_ > 0.0)) throw Error("speed profile needs a positive arc length");
  if (pieces_.empty() || pieces_.front().x != 0.0)
    throw Error("speed profile must start at s = 0");
  for (std::size_t i = 1; i < pieces_.size(); ++i)
    if (!(pieces_[i].x > pieces_[i - 1].x) || !(pieces_[i].x < length_))
      throw Error("speed profile pieces must be increasing inside the arc");
}

SpeedProfile SpeedProfile::from_linear(const PiecewiseLinear& f, double length) {
  std::vector<double> xs{0.0};
  for (const auto& k : f.knots())
    if (k.x > 0.0 && k.x < length) xs.push_back(k.x);
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double end = i + 1 < xs.size() ? xs[i + 1] : length;
    const double y = f(xs[i]);
    const double slope = std::isinf(end) ? 0.0 : (f(end) - y) / (end - xs[i]);
    pieces.push_back({xs[i], y, slope});
  }
  return SpeedProfile(length, std::move(pieces));
}

SpeedProfile SpeedProfile::clamped() const {
  std::vector<Piece> out;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Piece& p = pieces_[i];
    const double end = piece_end(i);
    const double left = p.value;
    const double right = std::isinf(end) ? (p.slope > 0.0 ? kInf : p.slope < 0.0 ? -kInf : left)
                                         : p.value + p.slope * (end - p.x);
    if (left >= 0.0 && right >= 0.0) {
      out.push_back(p);
    } else if (left <= 0.0 && right <= 0.0) {
      out.push_back({p.x, 0.0, 0.0});
    } else {
      const double root = p.x - p.value / p.slope;
      const bool split = root > p.x && root < end;
      if (left > 0.0) {
        out.push_back(p);
        if (split) out.push_back({root, 0.0, 0.0});
      } else {
        out.push_back({p.x, 0.0, 0.0});
        if (split) out.push_back({root, 0.0, p.slope});
      }
    }
  }
  return SpeedProfile(length_, std::move(out));
}

std::size_t SpeedProfile::piece_at(double s) const {
  const auto it = std::upper_bound(pieces_.begin(), pieces_.end(), s,
                                   [](double v, const Piece& p) { return v < p.x; });
  return static_cast<std::size_t>(it - pieces_.begin()) - 1;
}

double SpeedProfile::operator()(double s) const {
  const Piece& p = pieces_[piece_at(s)];
  return p.value + p.slope * (s - p.x);
}

double SpeedProfile::max_abs_slope() const {
  double out = 0.0;
  for (const auto& p : pieces_) out = std::max(out, std::abs(p.slope));
  return out;
}

SpeedProfile::Motion SpeedProfile::follow(double s0, double duration) const {
  std::size_t i = piece_at(s0);
  double s = s0;
  double elapsed = 0.0;
  while (true) {
    const Piece& p = pieces_[i];
    const double end = piece_end(i);
    const double v0 = p.value + p.slope * (s - p.x);
    if (!(v0 > 0.0)) return {false, duration, s};
    const double g = p.slope;
    const double remaining = duration - elapsed;

    // Time to reach the piece end under ds/dt = v0 + g (s - s_start):
    // (dist / v0) * log1p(z) / z with z = g dist / v0; infinite when the speed
    // would reach zero first (z <= -1).
    double tau = kInf;
    if (!std::isinf(end)) {
      const double dist = end - s;
      const double z = g * dist / v0;
      if (z > -1.0) tau = z == 0.0 ? dist / v0 : dist / v0 * (std::log1p(z) / z);
    }
    if (tau <= remaining) {
      elapsed += tau;
      s = end;
      if (i + 1 == pieces_.size()) return {true, elapsed, s};
      ++i;
      continue;
    }
    if (std::isinf(remaining)) return {false, duration, s};
    const double moved = g == 0.0 ? v0 * remaining : v0 * (std::expm1(g * remaining) / g);
    return {false, duration, std::min(s + moved, end)};
  }
}

}  // namespace netmeasure
