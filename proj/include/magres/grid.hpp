#pragma once

#include <cstddef>

namespace magres {

/// Staggered radial grid on (0, r_max]: nodes r_j = (j + 1/2) dr for
/// j = 0..N-1 and half nodes j * dr for j = 0..N, so no node sits on the
/// polar singularity.
class RadialGrid {
public:
  static constexpr std::size_t min_points = 64;

  RadialGrid(double r_max, std::size_t n);

  double r_max() const { return r_max_; }
  std::size_t size() const { return n_; }
  double dr() const { return dr_; }
  double node(std::size_t j) const { return (static_cast<double>(j) + 0.5) * dr_; }
  double half(std::size_t j) const { return static_cast<double>(j) * dr_; }

  /// Same r_max with N/2 points (used for Richardson extrapolation).
  RadialGrid coarsened() const;

private:
  double r_max_;
  std::size_t n_;
  double dr_;
};

}  // namespace magres
