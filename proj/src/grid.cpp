#include "magres/grid.hpp"

#include <cmath>
#include <string>

#include "magres/errors.hpp"

namespace magres {

RadialGrid::RadialGrid(double r_max, std::size_t n) : r_max_(r_max), n_(n), dr_(0.0) {
  if (!(r_max > 0.0) || !std::isfinite(r_max)) throw ValidationError("grid r_max must be positive and finite");
  if (n < min_points) throw ValidationError("grid needs at least 64 points, got " + std::to_string(n));
  dr_ = r_max / static_cast<double>(n);
}

RadialGrid RadialGrid::coarsened() const {
  if (n_ % 2 != 0) throw ValidationError("Richardson extrapolation needs an even point count");
  return RadialGrid(r_max_, n_ / 2);
}

}  // namespace magres
