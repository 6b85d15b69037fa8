// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "netmeasure/piecewise.hpp"

namespace netmeasure {

/// Speed along one arc: linear on each piece, possibly discontinuous at piece
/// starts, right-continuous. Characteristics are integrated in closed form.
class SpeedProfile {
 public:
  /// v(s) = value + slope * (s - x) for s in [x, next piece's x).
  struct Piece {
    double x;
    double value;
    double slope;
  };

  struct Motion {
    /// The head s = L was reached within the allotted time.
    bool exited = false;
    /// Elapsed time at exit, or the allotted duration otherwise.
    double time = 0.0;
    double s = 0.0;
  };

  SpeedProfile() : length_(kInf), pieces_{{0.0, 0.0, 0.0}} {}
  /// pieces[0].x must be 0 and the starts strictly increasing below `length`.
  SpeedProfile(double length, std::vector<Piece> pieces);

  static SpeedProfile from_linear(const PiecewiseLinear& f, double length);

  /// max(v, 0), splitting pieces where v changes sign.
  SpeedProfile clamped() const;

  double operator()(double s) const;
  double length() const { return length_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  double max_abs_slope() const;

  /// Follows ds/dt = v(s) from s0 for at most `duration` (may be +inf).
  /// A point where v = 0 is never left; a piece whose speed decays to zero at
  /// its end is never crossed.
  Motion follow(double s0, double duration) const;

 private:
  std::size_t piece_at(double s) const;
  double piece_end(std::size_t i) const {
    return i + 1 < pieces_.size() ? pieces_[i + 1].x : length_;
  }

  double length_;
  std::vector<Piece> pieces_;
};

}  // namespace netmeasure
